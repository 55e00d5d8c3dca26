"""mixedparseval: line integrals of decaying·periodic functions by series.

For an integrable decaying f and a T-periodic g, the integral of f·conj(g)
over the real line equals the bilateral series Σₙ f̂(2πn/T)·conj(Cₙ(g)).
This package evaluates that series with tail control, verifies the
summability hypothesis behind it, and cross-checks everything against an
adaptive-quadrature oracle.
"""

from ._backend import backend_name
from .catalog import (SeriesValue, example1_series, example2_double_sum_J,
                      example2_reference, example3_theta, theta2)
from .engine import (HypothesisReport, MixedResult, check_hypothesis,
                     classical_parseval_sides, evaluate_mixed,
                     periodize_sample)
from .errors import NonConvergenceError, UnsupportedError
from .expr import ExprAst, ParseError, UnknownIdentifierError, parse
from .fourier import CoefficientTable, coefficient, coefficient_table, transform
from .functions import (DecayingFunction, Envelope, PeriodicFunction,
                        evaluate, make_decaying, make_periodic)
from .quadrature import (QuadratureError, QuadratureResult, integrate_finite,
                         integrate_line)

__version__ = "0.1.0"

__all__ = [
    "ExprAst", "ParseError", "UnknownIdentifierError", "parse",
    "DecayingFunction", "PeriodicFunction", "Envelope",
    "make_decaying", "make_periodic", "evaluate",
    "QuadratureResult", "QuadratureError", "integrate_finite", "integrate_line",
    "CoefficientTable", "transform", "coefficient", "coefficient_table",
    "HypothesisReport", "MixedResult", "check_hypothesis", "evaluate_mixed",
    "periodize_sample", "classical_parseval_sides",
    "SeriesValue", "example1_series", "example2_reference",
    "example2_double_sum_J", "theta2", "example3_theta",
    "NonConvergenceError", "UnsupportedError",
    "backend_name", "__version__",
]
