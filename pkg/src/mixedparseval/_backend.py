"""Kernel backend selection.

Prefers the compiled Cython extension; falls back to the NumPy reference
implementation when the extension is absent (or when the environment
variable MIXEDPARSEVAL_PURE is set to a non-empty value, which is handy for
benchmarking and debugging).
"""

import os

if os.environ.get("MIXEDPARSEVAL_PURE"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

eval_family = _impl.eval_family
eval_program = _impl.eval_program
eval_integrand = _impl.eval_integrand
logistic_direct = _impl.logistic_direct
logistic_series = _impl.logistic_series

FAM_SECH = _impl.FAM_SECH
FAM_GAUSSIAN = _impl.FAM_GAUSSIAN
FAM_LOGISTIC = _impl.FAM_LOGISTIC
FAM_COSH_PLUS_COS = _impl.FAM_COSH_PLUS_COS
FAM_COSH_MINUS_COS = _impl.FAM_COSH_MINUS_COS
FAM_LOG_COS_SQUARED = _impl.FAM_LOG_COS_SQUARED


def backend_name() -> str:
    """Name of the kernel backend actually in use ("cython" or "pure-python")."""
    return _impl.BACKEND_NAME
