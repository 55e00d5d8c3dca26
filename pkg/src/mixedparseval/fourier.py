"""Fourier data: line transforms f̂(ω) and periodic coefficients Cₙ(g).

Conventions (fixed everywhere in this package):

    f̂(ω)  = ∫_R f(t) e^{-iωt} dt          (no 1/2π prefactor)
    Cₙ(g) = (1/T) ∫_0^T g(t) e^{-2πint/T} dt

Built-in families use their closed forms; everything else goes through the
numeric paths (adaptive quadrature for transforms, spectrally convergent
trapezoid sums for coefficients).
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk
from .errors import NonConvergenceError, UnsupportedError
from .functions import DecayingFunction, PeriodicFunction
from .quadrature import integrate_line

_DIRECT_TERM_BUDGET = 1_000_000
_AVERAGING_PASSES = 40
_MAX_GRID = 2 ** 20


def _logistic_hat(omega: float, tol: float) -> float:
    """Transform of 1/(1+e^{2|x|}): Σ_k (-1)^(k-1) 4k/(4k²+ω²).

    Terms peak near k = |ω|/2 and then decay like 1/k, so plain alternating
    truncation needs the first omitted term below tol/2 *past the peak*.
    When that is affordable within the term budget we sum directly; otherwise
    we sum a fixed head and collapse the alternating tail by repeated
    pairwise averaging, which is far more accurate than the budget-limited
    direct sum could ever be.
    """
    w = abs(omega)
    disc = max(0.0, 1.0 - (0.5 * tol * w) ** 2)
    kstop = int(math.ceil((1.0 + math.sqrt(disc)) / tol)) + 1
    if kstop <= _DIRECT_TERM_BUDGET and kstop >= 0.5 * w + 1.0:
        return float(_bk.logistic_direct(w, kstop))
    k0 = max(48, int(0.75 * w) + 16)
    value, _err = _bk.logistic_series(w, k0, _AVERAGING_PASSES)
    return float(value)


def transform(f: DecayingFunction, omega: float, tol: float = 1e-12) -> complex:
    """Fourier transform f̂(ω) = ∫ f(t)·e^{−iωt} dt.

    Analytic for the built-in families, numeric (two line quadratures, for
    the cos and −sin parts) otherwise.  The numeric path raises
    NonConvergenceError when the quadrature cannot reach tolerance.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    omega = float(omega)
    kind = f.transform_kind
    if kind == "sech":
        b = f.param
        arg = math.pi * omega / (2.0 * b)
        try:
            re = (math.pi / b) / math.cosh(arg)
        except OverflowError:
            re = 0.0
        return complex(re, 0.0)
    if kind == "gaussian":
        b = f.param
        return complex(2.0 * math.sqrt(math.pi * b) * math.exp(-b * omega * omega), 0.0)
    if kind == "logistic":
        return complex(_logistic_hat(omega, tol), 0.0)

    width = None
    if abs(omega) > 1.0:
        width = 8.0 / abs(omega)
    half = 0.5 * tol
    re = integrate_line(_Modulated(f.descriptor, omega, "cosmod"), half,
                        envelope=f.envelope, max_panel_width=width)
    im = integrate_line(_Modulated(f.descriptor, omega, "negsinmod"), half,
                        envelope=f.envelope, max_panel_width=width)
    value = complex(re.value, im.value)
    if not (re.converged and im.converged):
        raise NonConvergenceError(
            f"numeric transform did not converge at omega={omega:g}", partial=value)
    return value


class _Modulated:
    """f(x)·cos(ωx) or f(x)·(−sin(ωx)) as a descriptor-backed integrand."""

    def __init__(self, descriptor, omega, op):
        self.descriptor = (op, descriptor, float(omega))


@dataclass(frozen=True)
class CoefficientTable:
    """Cₙ(g) for all |n| ≤ n_max.  source is "analytic" or "numeric";
    grid_size is the trapezoid grid actually used (numeric only)."""

    n_max: int
    values: dict
    source: str
    grid_size: int | None = None


def _analytic_coefficient(g: PeriodicFunction, n: int) -> complex:
    kind = g.coeff_kind
    a = g.param
    if kind == "cosh-plus-cos":
        sign = -1.0 if n % 2 else 1.0
        return complex(sign * math.exp(-abs(n) * a) / math.sinh(a), 0.0)
    if kind == "cosh-minus-cos":
        return complex(math.exp(-abs(n) * a) / math.sinh(a), 0.0)
    if kind == "log-cos-squared":
        if n == 0:
            return complex(-2.0 * math.log(2.0), 0.0)
        if n % 2:
            return complex(0.0, 0.0)
        m = n // 2
        sign = 1.0 if (abs(m) - 1) % 2 == 0 else -1.0
        return complex(sign / abs(m), 0.0)
    raise ValueError(f"no analytic coefficients for {g.label!r}")


def _grid_samples(g: PeriodicFunction, M: int):
    t = np.arange(M, dtype=np.float64) * (g.period / M)
    samples = np.asarray(_bk.eval_integrand(g.descriptor, t), dtype=np.float64)
    if not np.all(np.isfinite(samples)):
        raise UnsupportedError(
            f"{g.label!r} is not finite on the coefficient grid; "
            "numeric coefficients need a smooth periodic function")
    return t, samples


def _grid_coefficients(t, samples, period: float, n_max: int):
    """All Cₙ, 0 ≤ n ≤ n_max, for real samples on a uniform grid.

    Uses an incrementally updated phase vector, re-anchored every 64 steps
    to keep the accumulated rounding at the 1e-14 level.
    """
    M = len(samples)
    base = np.exp(-2j * math.pi * t / period)
    phase = np.ones(M, dtype=np.complex128)
    out = np.empty(n_max + 1, dtype=np.complex128)
    for n in range(n_max + 1):
        if n and n % 64 == 0:
            phase = np.exp(-2j * math.pi * n * t / period)
        out[n] = np.mean(samples * phase)
        phase *= base
    return out


def coefficient(g: PeriodicFunction, n: int, tol: float = 1e-12) -> complex:
    """Exponential Fourier coefficient Cₙ(g) under the 1/T convention.

    Analytic for built-ins.  The numeric path (trapezoid sums, doubling the
    grid until the value moves by < tol) refuses functions with declared
    singular points — spectral convergence does not hold there.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = int(n)
    if g.coeff_kind is not None:
        return _analytic_coefficient(g, n)
    if g.singular_points:
        raise UnsupportedError(
            f"{g.label!r} has declared singular points; numeric trapezoid "
            "coefficients are unsupported (supply analytic coefficients)")
    table = coefficient_table(g, abs(n), tol)
    return table.values[n]


def coefficient_table(g: PeriodicFunction, n_max: int, tol: float = 1e-12) -> CoefficientTable:
    """Cₙ(g) for every |n| ≤ n_max, on one shared grid for the numeric path."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    if not tol > 0:
        raise ValueError("tol must be positive")
    n_max = int(n_max)
    if g.coeff_kind is not None:
        values = {}
        for n in range(n_max + 1):
            c = _analytic_coefficient(g, n)
            values[n] = c
            values[-n] = c.conjugate()
        return CoefficientTable(n_max=n_max, values=values, source="analytic")
    if g.singular_points:
        raise UnsupportedError(
            f"{g.label!r} has declared singular points; numeric trapezoid "
            "coefficients are unsupported (supply analytic coefficients)")

    # grid must resolve the highest requested mode with headroom
    M = 256
    while M < 8 * (n_max + 1):
        M *= 2
    t, samples = _grid_samples(g, M)
    current = _grid_coefficients(t, samples, g.period, n_max)
    while True:
        M *= 2
        if M > _MAX_GRID:
            raise NonConvergenceError(
                f"coefficient grid for {g.label!r} exceeded {_MAX_GRID} points "
                f"without stabilizing (is the declared period {g.period:g} right?)",
                partial=None)
        t, samples = _grid_samples(g, M)
        refined = _grid_coefficients(t, samples, g.period, n_max)
        if float(np.max(np.abs(refined - current))) < tol:
            break
        current = refined

    values = {}
    for n in range(n_max + 1):
        c = complex(refined[n])
        values[n] = c
        values[-n] = c.conjugate()  # exact for the real-valued samples used here
    return CoefficientTable(n_max=n_max, values=values, source="numeric", grid_size=M)
