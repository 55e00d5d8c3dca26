"""Exceptions shared across the numeric modules."""


class NonConvergenceError(RuntimeError):
    """A series or iterative refinement failed to meet tolerance.

    `partial` carries the best available result (type depends on the caller:
    a MixedResult from the engine, a complex value from a transform, ...).
    """

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class UnsupportedError(RuntimeError):
    """The requested numeric path is explicitly unsupported (e.g. trapezoid
    coefficients for a function with declared singular points)."""
