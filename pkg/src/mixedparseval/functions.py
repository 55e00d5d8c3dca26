"""Function model: decaying functions f on the line, periodic functions g.

Built-in families carry their analytic Fourier data (used by `fourier`) and
decay envelopes (used for truncation only, never for results).  Expression-
defined functions go through the numeric paths instead.

Decaying families      f(x)                 Periodic families     g(x), T = 2π
----------------       ------------------   -------------------   ---------------------
sech        (b > 0)    1 / cosh(bx)         cosh-plus-cos (a>0)   1/(cosh a + cos x)
gaussian    (b > 0)    exp(-x²/(4b))        cosh-minus-cos (a>0)  1/(cosh a - cos x)
logistic-tail          1/(1 + e^{2|x|})     log-cos-squared       log(cos² x)
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk
from . import expr as expr_mod

TWO_PI = 2.0 * math.pi

DECAYING_FAMILIES = ("sech", "gaussian", "logistic-tail")
PERIODIC_FAMILIES = ("cosh-plus-cos", "cosh-minus-cos", "log-cos-squared")

_ENVELOPE_KINDS = ("exp", "gauss")


@dataclass(frozen=True)
class Envelope:
    """Monotone decay bound: amplitude·e^{−rate·|x|} ("exp") or
    amplitude·e^{−rate·x²} ("gauss"), trusted for |x| ≥ x0."""

    kind: str
    amplitude: float
    rate: float
    x0: float = 0.0

    def __post_init__(self):
        if self.kind not in _ENVELOPE_KINDS:
            raise ValueError(f"envelope kind must be one of {_ENVELOPE_KINDS}")
        if not (self.amplitude > 0 and self.rate > 0):
            raise ValueError("envelope amplitude and rate must be positive")
        if self.x0 < 0:
            raise ValueError("envelope x0 must be nonnegative")

    def __call__(self, x):
        ax = np.abs(np.asarray(x, dtype=np.float64))
        if self.kind == "exp":
            out = self.amplitude * np.exp(-self.rate * ax)
        else:
            out = self.amplitude * np.exp(-self.rate * ax * ax)
        return float(out) if np.ndim(x) == 0 else out

    def tail_bound(self, L: float) -> float:
        """Upper bound on ∫_{|x|>L} envelope(x) dx (two-sided)."""
        if self.kind == "exp":
            return 2.0 * self.amplitude / self.rate * math.exp(-self.rate * L)
        r = self.rate
        return self.amplitude * math.sqrt(math.pi / r) * math.erfc(math.sqrt(r) * L)

    def cutoff(self, tail_target: float) -> float:
        """Smallest convenient L ≥ x0 with tail_bound(L) ≤ tail_target."""
        if tail_target <= 0:
            raise ValueError("tail target must be positive")
        if self.kind == "exp":
            L = math.log(max(2.0 * self.amplitude / (self.rate * tail_target), 1.0)) / self.rate
        else:
            guess = math.log(max(self.amplitude * math.sqrt(math.pi / self.rate) / tail_target, 1.0))
            L = math.sqrt(max(guess, 1.0) / self.rate)
        L = max(L, self.x0, 1.0)
        while self.tail_bound(L) > tail_target:
            L *= 1.25
        return L


@dataclass(frozen=True)
class DecayingFunction:
    """A function f: R → R that decays at infinity (integrable on the line)."""

    label: str
    descriptor: tuple
    envelope: Envelope | None
    transform_kind: str | None  # analytic transform: "sech"|"gaussian"|"logistic"
    family: str | None = None
    param: float | None = None

    def __call__(self, x):
        return _eval_descriptor(self.descriptor, x)


@dataclass(frozen=True)
class PeriodicFunction:
    """A T-periodic function g: R → R (possibly with integrable singularities)."""

    label: str
    descriptor: tuple
    period: float
    coeff_kind: str | None = None  # analytic coefficients, named like the family
    family: str | None = None
    param: float | None = None
    singular_points: tuple = ()  # locations within [0, period)
    unverified_period: bool = False

    def __call__(self, x):
        return _eval_descriptor(self.descriptor, x)


def _eval_descriptor(desc, x):
    xs = np.asarray(x, dtype=np.float64)
    out = _bk.eval_integrand(desc, np.atleast_1d(xs).ravel())
    if xs.ndim == 0:
        return float(out[0])
    return out.reshape(xs.shape)


def evaluate(fn, x):
    """Evaluate a DecayingFunction or PeriodicFunction at scalar or array x."""
    return fn(x)


def _as_ast(expression) -> expr_mod.ExprAst:
    if isinstance(expression, str):
        return expr_mod.parse(expression)
    if isinstance(expression, expr_mod.ExprAst):
        return expression
    raise TypeError("expr must be a string or a parsed ExprAst")


def _expr_descriptor(ast: expr_mod.ExprAst) -> tuple:
    prog = expr_mod.compile_ast(ast)
    return ("expr", prog.codes, prog.consts)


def _check_envelope(desc, envelope: Envelope, label: str):
    # 100-point soundness spot check, |x| >= x0, out to past the 1e-8 cutoff
    hi = max(envelope.cutoff(1e-8) * 1.5, envelope.x0 + 10.0)
    mag = np.linspace(max(envelope.x0, 1e-6), hi, 50)
    xs = np.concatenate([-mag[::-1], mag])
    vals = _eval_descriptor(desc, xs)
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise ValueError(f"{label} is not finite at x={bad:.6g}")
    bound = envelope(xs) * (1.0 + 1e-9) + 1e-300
    if np.any(np.abs(vals) > bound):
        bad = xs[np.abs(vals) > bound][0]
        raise ValueError(
            f"envelope violated: |{label}({bad:.6g})| = "
            f"{abs(_eval_descriptor(desc, bad)):.6g} exceeds {envelope(bad):.6g}"
        )


def make_decaying(family: str | None = None, *, b: float | None = None,
                  expr=None, envelope: Envelope | None = None) -> DecayingFunction:
    """Construct a decaying function from a built-in family or an expression.

    Built-ins attach their analytic transform and a default envelope.  For
    expression bodies the envelope is optional; when given it is spot-checked
    against |f| on a sample grid and a violation raises ValueError.
    """
    if family is not None and expr is not None:
        raise ValueError("give either a family name or an expression, not both")
    if family is not None:
        if family == "sech":
            if b is None or not b > 0:
                raise ValueError("family 'sech' needs parameter b > 0")
            return DecayingFunction(
                label=f"sech(b={b:g})",
                descriptor=("family", _bk.FAM_SECH, float(b)),
                envelope=Envelope("exp", 2.0, float(b)),
                transform_kind="sech",
                family="sech",
                param=float(b),
            )
        if family == "gaussian":
            if b is None or not b > 0:
                raise ValueError("family 'gaussian' needs parameter b > 0")
            return DecayingFunction(
                label=f"gaussian(b={b:g})",
                descriptor=("family", _bk.FAM_GAUSSIAN, float(b)),
                envelope=Envelope("gauss", 1.0, 1.0 / (4.0 * float(b))),
                transform_kind="gaussian",
                family="gaussian",
                param=float(b),
            )
        if family == "logistic-tail":
            if b is not None:
                raise ValueError("family 'logistic-tail' takes no parameters")
            return DecayingFunction(
                label="logistic-tail",
                descriptor=("family", _bk.FAM_LOGISTIC, 0.0),
                envelope=Envelope("exp", 1.0, 2.0),
                transform_kind="logistic",
                family="logistic-tail",
            )
        raise ValueError(f"unknown decaying family {family!r}; "
                         f"expected one of {DECAYING_FAMILIES}")
    if expr is None:
        raise ValueError("need a family name or an expression")
    ast = _as_ast(expr)
    desc = _expr_descriptor(ast)
    if envelope is not None:
        _check_envelope(desc, envelope, ast.source)
    return DecayingFunction(
        label=ast.source,
        descriptor=desc,
        envelope=envelope,
        transform_kind=None,
    )


def _spot_check_period(desc, period: float, rng_seed: int = 1234) -> bool:
    rng = np.random.default_rng(rng_seed)
    xs = rng.uniform(-5.0 * period, 5.0 * period, size=100)
    a = _eval_descriptor(desc, xs)
    c = _eval_descriptor(desc, xs + period)
    ok = np.isfinite(a) & np.isfinite(c)
    if not np.any(ok):
        return False
    scale = 1.0 + float(np.max(np.abs(a[ok])))
    return bool(np.all(np.abs(a[ok] - c[ok]) <= 1e-12 * scale))


def make_periodic(family: str | None = None, *, a: float | None = None,
                  expr=None, period: float | None = None) -> PeriodicFunction:
    """Construct a periodic function from a built-in family or an expression.

    Built-ins have period 2π and analytic Fourier coefficients.  Expression
    bodies need an explicit period; periodicity is spot-checked and the
    `unverified_period` flag set when the check cannot confirm it.
    """
    if family is not None and expr is not None:
        raise ValueError("give either a family name or an expression, not both")
    if family is not None:
        if period is not None and not math.isclose(period, TWO_PI):
            raise ValueError("built-in periodic families have period 2*pi")
        if family in ("cosh-plus-cos", "cosh-minus-cos"):
            if a is None or not a > 0:
                raise ValueError(f"family {family!r} needs parameter a > 0")
            tag = _bk.FAM_COSH_PLUS_COS if family == "cosh-plus-cos" else _bk.FAM_COSH_MINUS_COS
            return PeriodicFunction(
                label=f"{family}(a={a:g})",
                descriptor=("family", tag, float(a)),
                period=TWO_PI,
                coeff_kind=family,
                family=family,
                param=float(a),
            )
        if family == "log-cos-squared":
            if a is not None:
                raise ValueError("family 'log-cos-squared' takes no parameters")
            return PeriodicFunction(
                label="log-cos-squared",
                descriptor=("family", _bk.FAM_LOG_COS_SQUARED, 0.0),
                period=TWO_PI,
                coeff_kind="log-cos-squared",
                family="log-cos-squared",
                singular_points=(math.pi / 2.0, 3.0 * math.pi / 2.0),
            )
        raise ValueError(f"unknown periodic family {family!r}; "
                         f"expected one of {PERIODIC_FAMILIES}")
    if expr is None:
        raise ValueError("need a family name or an expression")
    if period is None or not period > 0:
        raise ValueError("expression-defined periodic functions need period > 0")
    ast = _as_ast(expr)
    desc = _expr_descriptor(ast)
    verified = _spot_check_period(desc, float(period))
    return PeriodicFunction(
        label=ast.source,
        descriptor=desc,
        period=float(period),
        unverified_period=not verified,
    )
