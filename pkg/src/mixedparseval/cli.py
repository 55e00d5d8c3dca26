"""Command-line front end.

Subcommands:
  evaluate          series value of ∫ f·conj(g) with optional oracle/hypothesis
  transform         f̂(ω) for a decaying function
  coeffs            Cₙ(g) table for a periodic function
  check-hypothesis  block-norm summability evidence for f
  paper-example     reproduce worked example 1, 2, or 3

Exit codes: 0 success, 1 usage/construction error (one-line diagnostic on
stderr), 2 numeric non-convergence (partial report still emitted).

With --json, each emitted report line is a single JSON object whose keys
are drawn from: method, value_re, value_im, tail_bound, n_used,
oracle_value, oracle_gap, hypothesis_verdict, timing_ms.  Absent or
non-finite fields are omitted.  Numeric fields are bit-stable across reruns
except timing_ms.
"""

import argparse
import json
import math
import sys
import time

from . import catalog, engine
from .errors import NonConvergenceError, UnsupportedError
from .expr import ParseError
from .fourier import coefficient_table, transform
from .functions import (DECAYING_FAMILIES, PERIODIC_FAMILIES, TWO_PI,
                        Envelope, make_decaying, make_periodic)
from .quadrature import QuadratureError, integrate_line

_REPORT_KEYS = ("method", "value_re", "value_im", "tail_bound", "n_used",
                "oracle_value", "oracle_gap", "hypothesis_verdict", "timing_ms")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_params(pairs, allowed, what):
    params = {}
    for item in pairs or ():
        key, sep, raw = item.partition("=")
        if not sep:
            raise _UsageError(f"{what} parameter {item!r} is not of the form k=v")
        if key not in allowed:
            raise _UsageError(f"{what} parameter {key!r} not recognized "
                              f"(allowed: {', '.join(allowed) or 'none'})")
        try:
            params[key] = float(raw)
        except ValueError:
            raise _UsageError(f"{what} parameter {key}={raw!r} is not a number")
    return params


def _parse_envelope(spec):
    if spec is None:
        return None
    parts = spec.split(":")
    if len(parts) < 2 or parts[0] not in ("exp", "gauss"):
        raise _UsageError(
            "envelope must look like exp:RATE[:AMP] or gauss:RATE[:AMP]")
    try:
        rate = float(parts[1])
        amp = float(parts[2]) if len(parts) > 2 else 1.0
    except ValueError:
        raise _UsageError(f"bad envelope numbers in {spec!r}")
    try:
        return Envelope(parts[0], amp, rate)
    except ValueError as exc:
        raise _UsageError(str(exc))


def _build_f(args):
    family = getattr(args, "f", None)
    expr_text = getattr(args, "f_expr", None)
    if (family is None) == (expr_text is None):
        raise _UsageError("give exactly one of --f or --f-expr")
    try:
        if family is not None:
            params = _parse_params(args.f_param, ("a", "b"), "--f-param")
            if family not in DECAYING_FAMILIES:
                raise _UsageError(f"unknown decaying family {family!r} "
                                  f"(choose from: {', '.join(DECAYING_FAMILIES)})")
            if "a" in params:
                raise _UsageError(f"family {family!r} does not take parameter a")
            return make_decaying(family, b=params.get("b"))
        envelope = _parse_envelope(getattr(args, "f_envelope", None))
        return make_decaying(expr=expr_text, envelope=envelope)
    except (ValueError, ParseError) as exc:
        raise _UsageError(str(exc))


def _build_g(args):
    family = getattr(args, "g", None)
    expr_text = getattr(args, "g_expr", None)
    if (family is None) == (expr_text is None):
        raise _UsageError("give exactly one of --g or --g-expr")
    try:
        if family is not None:
            params = _parse_params(args.g_param, ("a", "b"), "--g-param")
            if family not in PERIODIC_FAMILIES:
                raise _UsageError(f"unknown periodic family {family!r} "
                                  f"(choose from: {', '.join(PERIODIC_FAMILIES)})")
            if "b" in params:
                raise _UsageError(f"family {family!r} does not take parameter b")
            return make_periodic(family, a=params.get("a"),
                                 period=getattr(args, "period", None))
        period = getattr(args, "period", None)
        if period is None:
            raise _UsageError("--g-expr requires --period")
        return make_periodic(expr=expr_text, period=period)
    except (ValueError, ParseError) as exc:
        raise _UsageError(str(exc))


def _emit(report: dict, json_mode: bool, stream=None):
    stream = stream or sys.stdout
    clean = {}
    for key in _REPORT_KEYS:
        value = report.get(key)
        if value is None:
            continue
        if isinstance(value, float) and not math.isfinite(value):
            continue
        clean[key] = value
    if json_mode:
        print(json.dumps(clean, allow_nan=False), file=stream)
    else:
        width = max(len(k) for k in clean)
        for key, value in clean.items():
            if isinstance(value, float):
                print(f"{key:<{width}}  {value!r}", file=stream)
            else:
                print(f"{key:<{width}}  {value}", file=stream)


def _mixed_report(result, method="mixed-series", timing_ms=None, verdict=None):
    return {
        "method": method,
        "value_re": result.value.real,
        "value_im": result.value.imag,
        "tail_bound": result.tail_bound,
        "n_used": result.n_used,
        "oracle_value": result.oracle_value,
        "oracle_gap": result.oracle_gap,
        "hypothesis_verdict": verdict,
        "timing_ms": timing_ms,
    }


def _cmd_evaluate(args):
    f = _build_f(args)
    g = _build_g(args)
    t0 = time.perf_counter()
    verdict = None
    if args.check_hypothesis:
        report = engine.check_hypothesis(f, g.period, args.blocks,
                                         min(args.tol, 1e-10))
        verdict = report.verdict
    try:
        result = engine.evaluate_mixed(
            f, g, args.tol, with_oracle=args.compare_oracle,
            oracle_tol=args.oracle_tol, start_n=args.start_n)
    except NonConvergenceError as exc:
        timing = (time.perf_counter() - t0) * 1e3
        partial = exc.partial
        if partial is not None:
            _emit(_mixed_report(partial, timing_ms=timing, verdict=verdict),
                  args.json)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timing = (time.perf_counter() - t0) * 1e3
    _emit(_mixed_report(result, timing_ms=timing, verdict=verdict), args.json)
    return 0


def _cmd_transform(args):
    f = _build_f(args)
    t0 = time.perf_counter()
    try:
        value = transform(f, args.omega, args.tol)
    except NonConvergenceError as exc:
        timing = (time.perf_counter() - t0) * 1e3
        if exc.partial is not None:
            _emit({"method": "fourier-transform", "value_re": exc.partial.real,
                   "value_im": exc.partial.imag, "timing_ms": timing}, args.json)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timing = (time.perf_counter() - t0) * 1e3
    _emit({"method": "fourier-transform", "value_re": value.real,
           "value_im": value.imag, "timing_ms": timing}, args.json)
    return 0


def _cmd_coeffs(args):
    g = _build_g(args)
    if args.n_max < 0:
        raise _UsageError("--n-max must be >= 0")
    try:
        table = coefficient_table(g, args.n_max, args.tol)
    except UnsupportedError as exc:
        raise _UsageError(str(exc))
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        for n in range(-table.n_max, table.n_max + 1):
            c = table.values[n]
            _emit({"method": "fourier-coefficients", "n_used": n,
                   "value_re": c.real, "value_im": c.imag}, True)
    else:
        print(f"# source={table.source}"
              + (f" grid={table.grid_size}" if table.grid_size else ""))
        for n in range(-table.n_max, table.n_max + 1):
            c = table.values[n]
            print(f"{n:6d}  {c.real!r}  {c.imag!r}")
    return 0


def _cmd_check_hypothesis(args):
    f = _build_f(args)
    if args.blocks < 4:
        raise _UsageError("--blocks must be >= 4")
    t0 = time.perf_counter()
    try:
        report = engine.check_hypothesis(f, args.period, args.blocks, args.tol)
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    timing = (time.perf_counter() - t0) * 1e3
    if not args.json:
        print(f"period      {report.T!r}")
        print(f"blocks      k in [{report.k_range[0]}, {report.k_range[1]}]")
        print(f"partial_M   {report.partial_M!r}")
        print(f"decay_ratio {report.decay_ratio!r}")
        for k in sorted(report.block_norms):
            print(f"  norm[{k:+d}] = {report.block_norms[k]!r}")
    _emit({"method": "hypothesis-check", "hypothesis_verdict": report.verdict,
           "tail_bound": report.tail_bound, "timing_ms": timing}, args.json)
    return 0


def _cmd_paper_example(args):
    which = args.example
    if which in ("1", "3") and not (args.a > 0 and args.b > 0):
        raise _UsageError("need --a > 0 and --b > 0")
    t0 = time.perf_counter()
    otol = args.oracle_tol if args.oracle_tol is not None else 1e-9
    if which == "1":
        sv = catalog.example1_series(args.a, args.b, min(args.tol, 1e-12))
        f = make_decaying("sech", b=args.b)
        g = make_periodic("cosh-plus-cos", a=args.a)
    elif which == "2":
        sv = catalog.SeriesValue(value=catalog.example2_reference(),
                                 terms_used=1, tail_bound=0.0)
        f = make_decaying("logistic-tail")
        g = make_periodic("log-cos-squared")
    else:
        sv = catalog.example3_theta(args.a, args.b, min(args.tol, 1e-12))
        f = make_decaying("gaussian", b=args.b)
        g = make_periodic("cosh-minus-cos", a=args.a)

    class _Product:
        descriptor = ("product", f.descriptor, g.descriptor)

    psplits = (g.singular_points, g.period) if g.singular_points else None
    oracle = integrate_line(_Product(), otol, envelope=f.envelope,
                            periodic_splits=psplits)
    timing = (time.perf_counter() - t0) * 1e3
    report = {
        "method": f"paper-example-{which}",
        "value_re": sv.value,
        "value_im": 0.0,
        "tail_bound": sv.tail_bound,
        "n_used": sv.terms_used,
        "oracle_value": oracle.value,
        "oracle_gap": abs(sv.value - oracle.value),
        "timing_ms": timing,
    }
    if not args.json and which == "2":
        j = catalog.example2_double_sum_J(1_000_000)
        print(f"# J (double-sum route, q_max=10^6) = {j.value!r}; "
              f"-2*log^2(2) + 2*J = {2.0 * j.value - 2 * math.log(2.0) ** 2!r}")
    _emit(report, args.json)
    if not oracle.converged:
        print("error: oracle quadrature did not converge", file=sys.stderr)
        return 2
    return 0


def _add_f_flags(sub):
    sub.add_argument("--f", help="built-in decaying family: " + ", ".join(DECAYING_FAMILIES))
    sub.add_argument("--f-expr", help="expression body for f, e.g. 'exp(-x^2)'")
    sub.add_argument("--f-param", action="append", metavar="k=v",
                     help="family parameter (repeatable), e.g. b=2")
    sub.add_argument("--f-envelope", metavar="KIND:RATE[:AMP]",
                     help="decay hint for expression f: exp:RATE[:AMP] or gauss:RATE[:AMP]")


def _add_g_flags(sub):
    sub.add_argument("--g", help="built-in periodic family: " + ", ".join(PERIODIC_FAMILIES))
    sub.add_argument("--g-expr", help="expression body for g (needs --period)")
    sub.add_argument("--g-param", action="append", metavar="k=v",
                     help="family parameter (repeatable), e.g. a=1")
    sub.add_argument("--period", type=float,
                     help="period T for --g-expr (built-ins are 2*pi)")


def _make_parser():
    parser = _Parser(prog="mixedparseval",
                     description="Evaluate line integrals of decaying-times-"
                                 "periodic functions via the mixed Parseval series.")
    subs = parser.add_subparsers(dest="command", required=True)

    ev = subs.add_parser("evaluate", help="series value of the line integral")
    _add_f_flags(ev)
    _add_g_flags(ev)
    ev.add_argument("--tol", type=float, default=1e-10)
    ev.add_argument("--oracle-tol", type=float, default=None)
    ev.add_argument("--start-n", type=int, default=engine.DEFAULT_START_N,
                    help="initial series truncation (doubles from here)")
    ev.add_argument("--compare-oracle", action="store_true",
                    help="also integrate by quadrature and report the gap")
    ev.add_argument("--check-hypothesis", action="store_true",
                    help="report summability evidence alongside the value")
    ev.add_argument("--blocks", type=int, default=6,
                    help="blocks per side for --check-hypothesis")
    ev.add_argument("--json", action="store_true")
    ev.set_defaults(func=_cmd_evaluate)

    tr = subs.add_parser("transform", help="Fourier transform of f at omega")
    _add_f_flags(tr)
    tr.add_argument("--omega", type=float, required=True)
    tr.add_argument("--tol", type=float, default=1e-12)
    tr.add_argument("--json", action="store_true")
    tr.set_defaults(func=_cmd_transform)

    co = subs.add_parser("coeffs", help="Fourier coefficients of g")
    _add_g_flags(co)
    co.add_argument("--n-max", type=int, default=8)
    co.add_argument("--tol", type=float, default=1e-12)
    co.add_argument("--json", action="store_true")
    co.set_defaults(func=_cmd_coeffs)

    ch = subs.add_parser("check-hypothesis", help="block-norm summability evidence")
    _add_f_flags(ch)
    ch.add_argument("--period", type=float, default=TWO_PI)
    ch.add_argument("--blocks", type=int, default=6)
    ch.add_argument("--tol", type=float, default=1e-12)
    ch.add_argument("--json", action="store_true")
    ch.set_defaults(func=_cmd_check_hypothesis)

    pe = subs.add_parser("paper-example", help="reproduce a worked example")
    pe.add_argument("example", choices=("1", "2", "3"))
    pe.add_argument("--a", type=float, default=1.0,
                    help="parameter a (examples 1 and 3)")
    pe.add_argument("--b", type=float, default=1.0,
                    help="parameter b (examples 1 and 3)")
    pe.add_argument("--tol", type=float, default=1e-12)
    pe.add_argument("--oracle-tol", type=float, default=None)
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=_cmd_paper_example)
    return parser


def run(argv=None) -> int:
    """Parse argv, execute, and return the process exit status."""
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except UnsupportedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():  # console entry point
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
