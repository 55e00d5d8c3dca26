"""Closed-form reference values for the three worked examples.

These are the independent "second paths" the tests compare the series
engine and the quadrature oracle against:

  1. ∫ 1/((cosh a + cos x)·cosh bx) dx      — alternating exponential series
  2. ∫ log(cos²x)/(1+e^{2|x|}) dx = −log²2  — plus the double-sum J route
  3. ∫ e^{−x²/(4b)}/(cosh a − cos x) dx     — theta-function form
"""

import math
from dataclasses import dataclass

_MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class SeriesValue:
    value: float
    terms_used: int
    tail_bound: float


def example1_series(a: float, b: float, tol: float = 1e-12) -> SeriesValue:
    """π/(b·sinh a) + (2π/(b·sinh a))·Σ_{n≥1} (−1)ⁿ e^{−na}/cosh(πn/(2b)).

    Terms alternate with strictly decreasing magnitude, so the omitted tail
    is bounded by the first omitted term.
    """
    if not (a > 0 and b > 0 and tol > 0):
        raise ValueError("need a > 0, b > 0, tol > 0")
    lead = math.pi / (b * math.sinh(a))
    scale = 2.0 * lead
    total = lead
    terms = 1
    n = 1
    while True:
        try:
            t = scale * math.exp(-n * a) / math.cosh(math.pi * n / (2.0 * b))
        except OverflowError:
            t = 0.0
        if t < tol or n >= _MAX_TERMS:
            return SeriesValue(value=total, terms_used=terms, tail_bound=t)
        total += t if n % 2 == 0 else -t
        terms += 1
        n += 1


def example2_reference() -> float:
    """The closed-form value −log²2 of the second example's integral."""
    return -math.log(2.0) ** 2


def example2_double_sum_J(q_max: int) -> SeriesValue:
    """The double sum J = Σₙ Σₖ (−1)^{k+n}·k/((k²+n²)·n) by symmetrization.

    The double series is only conditionally convergent; averaging the (n,k)
    and (k,n) orderings over the square [1,q_max]² gives
    (1/2)·Σ (−1)^{k+n}/(nk), which factorizes as (1/2)·(Σ_{k≤q_max}(−1)^k/k)².
    The alternating-harmonic remainder bounds the tail by 1/q_max.
    """
    if q_max < 8:
        raise ValueError("need q_max >= 8")
    inner = 0.0
    sign = -1.0
    for k in range(1, q_max + 1):
        inner += sign / k
        sign = -sign
    return SeriesValue(value=0.5 * inner * inner, terms_used=q_max,
                       tail_bound=1.0 / q_max)


def theta2(q: float, tol: float = 1e-15) -> float:
    """Jacobi θ₂ at u = 0: θ₂(0,q) = 2·Σ_{n≥0} q^{(n+1/2)²}."""
    if not 0.0 < q < 1.0:
        raise ValueError("need 0 < q < 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    lnq = math.log(q)
    total = 0.0
    for n in range(_MAX_TERMS):
        t = 2.0 * math.exp((n + 0.5) ** 2 * lnq)
        if t < tol:
            break
        total += t
    return total


def example3_theta(a: float, b: float, tol: float = 1e-12) -> SeriesValue:
    """(2√(πb)/sinh a)·(1 + 2·Σ_{n≥1} e^{−an−bn²}).

    Super-geometric convergence; the tail after the first omitted term is
    dominated by the geometric series with ratio e^{−a−b(2n+1)}.
    """
    if not (a > 0 and b > 0 and tol > 0):
        raise ValueError("need a > 0, b > 0, tol > 0")
    scale = 2.0 * math.sqrt(math.pi * b) / math.sinh(a)
    total = scale
    terms = 1
    n = 1
    while True:
        t = scale * 2.0 * math.exp(-a * n - b * n * n)
        if t < tol or n >= _MAX_TERMS:
            ratio = math.exp(-a - b * (2.0 * n + 1.0))
            return SeriesValue(value=total, terms_used=terms,
                               tail_bound=t / (1.0 - ratio))
        total += t
        terms += 1
        n += 1
