"""Adaptive quadrature on finite intervals and on the whole line.

One core rule: an embedded 15-point Kronrod extension of 7-point Gauss.
Panels are refined worst-first until the summed error estimate drops below
the requested tolerance.  Integrable singularities are handled by declaring
split points: panels are pre-split there and sample points landing exactly
on a split are nudged into the interior.

This module is the validation oracle for the series engine and the numeric
fallback for Fourier data, so it favors robustness over raw speed.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk
from .expr import ExprAst, compile_ast

# 15-point Kronrod nodes/weights and the embedded 7-point Gauss weights
# (zero entries mark Kronrod-only nodes).  Values carry 25 significant
# digits so the rule itself contributes no error at double precision:
# the weights sum to 2 to the last ulp and degree-22 monomials integrate
# exactly to ~1e-16.
_XGK = np.array([
    -0.9914553711208126392068547, -0.9491079123427585245261897,
    -0.8648644233597690727897128, -0.7415311855993944398638648,
    -0.5860872354676911302941448, -0.4058451513773971669066064,
    -0.2077849550078984676006894, 0.0,
    0.2077849550078984676006894, 0.4058451513773971669066064,
    0.5860872354676911302941448, 0.7415311855993944398638648,
    0.8648644233597690727897128, 0.9491079123427585245261897,
    0.9914553711208126392068547,
])
_WGK = np.array([
    0.02293532201052922496373201, 0.06309209262997855329070066,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.204432940075298892414162, 0.2094821410847278280129992,
    0.204432940075298892414162, 0.1903505780647854099132564,
    0.1690047266392679028265834, 0.1406532597155259187451896,
    0.1047900103222501838398763, 0.06309209262997855329070066,
    0.02293532201052922496373201,
])
_WG = np.zeros(15)
_WG[1] = _WG[13] = 0.1294849661688696932706114
_WG[3] = _WG[11] = 0.2797053914892766679014678
_WG[5] = _WG[9] = 0.3818300505051189449503698
_WG[7] = 0.417959183673469387755102

SUBDIVISION_BUDGET = 10_000

_SPLIT_EPS = 1e-14     # "coincides with a split point" threshold
_SPLIT_NUDGE = 1e-13   # shift applied toward the panel interior
_NAN_NEAR_SPLIT = 1e-9  # NaN within this distance of a split is tolerated


class QuadratureError(RuntimeError):
    """The integrand returned NaN away from any declared split point."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error_estimate: float
    evaluations: int
    converged: bool
    subdivisions: int


def _vectorize(fn):
    """Adapt fn to a float64-array -> float64-array callable.

    Accepts anything carrying a `.descriptor`, a bare descriptor tuple, a
    parsed expression, or a plain callable (vector-capable or scalar-only).
    """
    desc = getattr(fn, "descriptor", None)
    if desc is None and isinstance(fn, tuple):
        desc = fn
    if desc is None and isinstance(fn, ExprAst):
        prog = compile_ast(fn)
        desc = ("expr", prog.codes, prog.consts)
    if desc is not None:
        return lambda xs: np.asarray(_bk.eval_integrand(desc, xs), dtype=np.float64)

    state = {"mode": None}

    def call(xs):
        if state["mode"] != "scalar":
            try:
                out = np.asarray(fn(xs), dtype=np.float64)
                if out.shape == xs.shape:
                    state["mode"] = "vector"
                    return out
            except Exception:
                pass
            state["mode"] = "scalar"
        return np.array([float(fn(float(x))) for x in xs], dtype=np.float64)

    return call


def _panel(fv, lo, hi, splits):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = mid + half * _XGK
    for s in splits:
        hit = np.abs(x - s) < _SPLIT_EPS
        if hit.any():
            x = np.where(hit, np.where(mid >= s, s + _SPLIT_NUDGE, s - _SPLIT_NUDGE), x)
    y = fv(x)
    bad = np.isnan(y)
    if bad.any():
        for xb in x[bad]:
            near = any(abs(xb - s) <= _NAN_NEAR_SPLIT for s in splits)
            if not near:
                raise QuadratureError(f"integrand returned NaN at x={xb!r}")
        y = np.where(bad, 0.0, y)
    k = half * float(np.dot(_WGK, y))
    g = half * float(np.dot(_WG, y))
    err = abs(k - g)
    if not math.isfinite(err):
        err = math.inf
    return k, err


def integrate_finite(fn, lo: float, hi: float, tol: float,
                     split_points=None, max_panel_width=None) -> QuadratureResult:
    """Integrate fn over [lo, hi] to absolute tolerance tol.

    `fn` may be a DecayingFunction/PeriodicFunction, a bare descriptor tuple,
    a parsed expression, an array-aware callable, or a plain scalar callable.
    Reversed endpoints flip the sign; equal endpoints give exactly zero.
    `split_points` marks integrable-singularity locations: panels never
    straddle them and samples are kept off them.  Exhausting the subdivision
    budget returns converged=False with the best estimate; NaN away from
    declared split points raises QuadratureError.
    """
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("need finite bounds")
    if not tol > 0:
        raise ValueError("tol must be positive")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0, True, 0)
    if lo > hi:
        res = integrate_finite(fn, hi, lo, tol, split_points, max_panel_width)
        return QuadratureResult(-res.value, res.error_estimate,
                                res.evaluations, res.converged, res.subdivisions)
    splits = tuple(sorted(float(s) for s in (split_points or ()) if lo < s < hi))
    if max_panel_width is not None and not max_panel_width > 0:
        raise ValueError("max_panel_width must be positive")

    fv = _vectorize(fn)
    edges = [lo, *splits, hi]
    segments = []
    for a, b in zip(edges[:-1], edges[1:]):
        if max_panel_width and b - a > max_panel_width:
            n = int(math.ceil((b - a) / max_panel_width))
            cuts = np.linspace(a, b, n + 1)
            segments.extend(zip(cuts[:-1], cuts[1:]))
        else:
            segments.append((a, b))

    heap = []
    evaluations = 0
    subdivisions = 0
    total_err = 0.0
    for a, b in segments:
        v, e = _panel(fv, a, b, splits)
        evaluations += 15
        total_err += e
        heapq.heappush(heap, (-e, a, b, v))

    resync = 0
    while total_err > tol:
        if subdivisions >= SUBDIVISION_BUDGET:
            break
        neg_e, a, b, _ = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        v1, e1 = _panel(fv, a, mid, splits)
        v2, e2 = _panel(fv, mid, b, splits)
        evaluations += 30
        subdivisions += 1
        heapq.heappush(heap, (-e1, a, mid, v1))
        heapq.heappush(heap, (-e2, mid, b, v2))
        total_err += e1 + e2 - (-neg_e)
        resync += 1
        if resync >= 256 or not math.isfinite(total_err):
            total_err = sum(-item[0] for item in heap)
            resync = 0

    # deterministic ascending-interval-order reduction
    panels = sorted((a, b, v, -neg_e) for neg_e, a, b, v in heap)
    value = 0.0
    error = 0.0
    for _, _, v, e in panels:
        value += v
        error += e
    return QuadratureResult(
        value=value,
        error_estimate=error,
        evaluations=evaluations,
        converged=error <= tol,
        subdivisions=subdivisions,
    )


def _replicate_periodic(offsets, period, L):
    pts = []
    for s in offsets:
        base = math.fmod(s, period)
        k = math.floor((-L - base) / period)
        x = base + k * period
        while x <= L:
            if -L < x < L:
                pts.append(x)
            x += period
    return pts


def integrate_line(fn, tol: float, envelope=None, split_points=None,
                   periodic_splits=None, max_panel_width=None) -> QuadratureResult:
    """Integrate fn over the whole line to absolute tolerance tol.

    With an envelope (see functions.Envelope), the window [-L, L] is chosen
    so the envelope's tail bound stays below tol/10 and the tail bound is
    folded into the error estimate.  Without one, L doubles from 8 until two
    successive window integrals agree within tol/2; if that never happens the
    result reports converged=False.

    `periodic_splits=(offsets, period)` replicates singularity locations
    across the window, for periodic integrand factors.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")

    def window_splits(L):
        pts = [s for s in (split_points or ()) if -L < s < L]
        if periodic_splits is not None:
            offsets, period = periodic_splits
            pts.extend(_replicate_periodic(offsets, period, L))
        return sorted(set(pts))

    if envelope is not None:
        L = envelope.cutoff(tol / 10.0)
        tail = envelope.tail_bound(L)
        res = integrate_finite(fn, -L, L, 0.9 * tol, split_points=window_splits(L),
                               max_panel_width=max_panel_width)
        error = res.error_estimate + tail
        return QuadratureResult(
            value=res.value,
            error_estimate=error,
            evaluations=res.evaluations,
            converged=res.converged and error <= tol,
            subdivisions=res.subdivisions,
        )

    L = 8.0
    prev = None
    evaluations = 0
    subdivisions = 0
    for _ in range(24):
        res = integrate_finite(fn, -L, L, tol / 2.0, split_points=window_splits(L),
                               max_panel_width=max_panel_width)
        evaluations += res.evaluations
        subdivisions += res.subdivisions
        if prev is not None and res.converged and abs(res.value - prev) < tol / 2.0:
            return QuadratureResult(
                value=res.value,
                error_estimate=res.error_estimate + abs(res.value - prev),
                evaluations=evaluations,
                converged=True,
                subdivisions=subdivisions,
            )
        prev = res.value
        L *= 2.0
    return QuadratureResult(
        value=prev if prev is not None else math.nan,
        error_estimate=math.inf,
        evaluations=evaluations,
        converged=False,
        subdivisions=subdivisions,
    )
