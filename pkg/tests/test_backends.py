"""Compiled kernels must agree with the pure-python reference bit-for-bit-ish."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

from mixedparseval import _backend
from mixedparseval import _kernels_py as ref
from mixedparseval.expr import compile_ast, parse
from mixedparseval.functions import make_decaying, make_periodic

cy = pytest.importorskip(
    "mixedparseval._kernels_cy", reason="compiled backend not built")


def test_backend_names():
    assert ref.BACKEND_NAME == "pure-python"
    assert cy.BACKEND_NAME == "cython"
    assert _backend.backend_name() in ("cython", "pure-python")


def test_opcode_tables_match():
    names = [n for n in dir(ref) if n.startswith(("OP_", "FAM_"))]
    assert names
    for name in names:
        assert getattr(cy, name) == getattr(ref, name), name


_FAMILIES = [
    (ref.FAM_SECH, 1.3),
    (ref.FAM_GAUSSIAN, 0.7),
    (ref.FAM_LOGISTIC, 0.0),
    (ref.FAM_COSH_PLUS_COS, 0.5),
    (ref.FAM_COSH_MINUS_COS, 2.0),
    (ref.FAM_LOG_COS_SQUARED, 0.0),
]


@pytest.mark.parametrize("tag,param", _FAMILIES)
def test_family_parity(tag, param):
    # includes overflow territory (|x| up to 1000) and points near the
    # log-cos-squared singularities.  numpy's SIMD transcendentals and
    # scalar libm may differ in the last couple of ulps, so the contract is
    # exact nan/inf/zero patterns plus tight relative agreement elsewhere.
    xs = np.concatenate([
        np.linspace(-1000.0, 1000.0, 2001),
        np.linspace(-4.0, 4.0, 997),
        np.array([math.pi / 2, -math.pi / 2, math.pi / 2 + 1e-9]),
    ])
    a = np.asarray(ref.eval_family(tag, param, xs), dtype=np.float64)
    b = np.asarray(cy.eval_family(tag, param, xs), dtype=np.float64)
    assert np.array_equal(np.isnan(a), np.isnan(b))
    assert np.array_equal(np.isfinite(a), np.isfinite(b))
    assert np.array_equal(a == 0.0, b == 0.0)
    ok = np.isfinite(a)
    assert np.allclose(a[ok], b[ok], rtol=1e-14, atol=0.0)


def test_family_bad_tag():
    xs = np.zeros(3)
    with pytest.raises(ValueError):
        ref.eval_family(99, 0.0, xs)
    with pytest.raises(ValueError):
        cy.eval_family(99, 0.0, xs)


_PROGRAMS = [
    "sech(2*x)*cos(3*x)",
    "exp(-x^2/4)+tanh(x)",
    "1/(cosh(1)+cos(x))",
    "log(abs(x))+sqrt(abs(x))",
    "x^3-2*x+pi",
    "sin(x)/x",          # nan at 0
    "exp(x)",            # overflow to inf
    "-x^2^0.5",
]


@pytest.mark.parametrize("text", _PROGRAMS)
def test_program_parity(text):
    prog = compile_ast(parse(text))
    xs = np.concatenate([
        np.linspace(-800.0, 800.0, 1601),
        np.array([0.0, 1e-300, -1e-300, 1e300]),
    ])
    a = np.asarray(ref.eval_program(prog.codes, prog.consts, xs))
    b = np.asarray(cy.eval_program(prog.codes, prog.consts, xs))
    finite = np.isfinite(a)
    # transcendental libm calls may differ in the last ulp between builds;
    # everything else (nan/inf pattern included) must match exactly
    assert np.array_equal(finite, np.isfinite(b))
    assert np.array_equal(np.isnan(a), np.isnan(b))
    assert np.all(a[~finite & ~np.isnan(a)] == b[~finite & ~np.isnan(b)])
    af, bf = a[finite], b[finite]
    scale = np.maximum(np.abs(af), 1.0)
    assert np.max(np.abs(af - bf) / scale, initial=0.0) < 1e-15


def test_integrand_parity_nested():
    f = make_decaying("gaussian", b=1.0)
    g = make_periodic("cosh-minus-cos", a=1.0)
    descs = [
        f.descriptor,
        ("product", f.descriptor, g.descriptor),
        ("square", ("product", f.descriptor, g.descriptor)),
        ("cosmod", f.descriptor, 3.5),
        ("negsinmod", f.descriptor, 2.0),
        ("wrap", g.descriptor, g.period),
        ("shiftsum", f.descriptor, 2.0 * math.pi, 6),
    ]
    xs = np.linspace(-30.0, 30.0, 1201)
    for desc in descs:
        a = np.asarray(ref.eval_integrand(desc, xs))
        b = np.asarray(cy.eval_integrand(desc, xs))
        assert np.allclose(a, b, rtol=1e-15, atol=0.0), desc[0]


def test_logistic_direct_parity():
    for w in (0.0, 1.0, 57.0, 3000.0):
        a = ref.logistic_direct(w, 500_000)
        b = cy.logistic_direct(w, 500_000)
        assert a == pytest.approx(b, rel=1e-14)


def test_logistic_series_parity():
    for w in (10.0, 512.0, 4096.0):
        va, ea = ref.logistic_series(w, max(48, int(0.75 * w) + 16), 40)
        vb, eb = cy.logistic_series(w, max(48, int(0.75 * w) + 16), 40)
        assert va == pytest.approx(vb, rel=1e-13)
        assert ea >= 0.0 and eb >= 0.0


def test_forced_pure_python_end_to_end():
    # the env knob must select the fallback and produce the same number
    code = (
        "import json\n"
        "from mixedparseval import backend_name\n"
        "from mixedparseval.engine import evaluate_mixed\n"
        "from mixedparseval.functions import make_decaying, make_periodic\n"
        "res = evaluate_mixed(make_decaying('logistic-tail'),"
        " make_periodic('log-cos-squared'), tol=1e-9)\n"
        "print(json.dumps({'backend': backend_name(), 'value': res.value.real}))\n"
    )
    env = dict(os.environ)
    env["MIXEDPARSEVAL_PURE"] = "1"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    pure = json.loads(out.stdout)
    assert pure["backend"] == "pure-python"

    env.pop("MIXEDPARSEVAL_PURE")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    compiled = json.loads(out.stdout)
    assert compiled["backend"] == "cython"
    assert pure["value"] == pytest.approx(compiled["value"], abs=1e-12)
