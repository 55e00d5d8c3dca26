"""Function model: built-in families, envelopes, validation, period checks."""

import math

import numpy as np
import pytest

from mixedparseval.functions import (
    DECAYING_FAMILIES,
    PERIODIC_FAMILIES,
    Envelope,
    make_decaying,
    make_periodic,
)


# --- decaying families --------------------------------------------------------

def test_sech_values():
    f = make_decaying("sech", b=1.0)
    assert f(0.0) == 1.0
    assert f(1.0) == pytest.approx(1.0 / math.cosh(1.0), rel=1e-15)
    f2 = make_decaying("sech", b=2.0)
    assert f2(0.5) == pytest.approx(1.0 / math.cosh(1.0), rel=1e-15)


def test_gaussian_values():
    f = make_decaying("gaussian", b=1.0)
    assert f(0.0) == 1.0
    assert f(2.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
    f4 = make_decaying("gaussian", b=0.25)
    assert f4(1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)


def test_logistic_tail_values():
    f = make_decaying("logistic-tail")
    assert f(0.0) == 0.5
    assert f(1.0) == pytest.approx(1.0 / (1.0 + math.exp(2.0)), rel=1e-15)
    assert f(-1.0) == f(1.0)


@pytest.mark.parametrize("family", ["sech", "gaussian", "logistic-tail"])
def test_decaying_evenness_is_exact(family):
    f = make_decaying(family, b=1.3) if family != "logistic-tail" else make_decaying(family)
    xs = np.linspace(0.0, 30.0, 1000)
    assert np.array_equal(f(xs), f(-xs))


def test_decaying_family_registry():
    assert set(DECAYING_FAMILIES) == {"sech", "gaussian", "logistic-tail"}
    assert set(PERIODIC_FAMILIES) == {"cosh-plus-cos", "cosh-minus-cos", "log-cos-squared"}


@pytest.mark.parametrize("family,kwargs", [
    ("sech", {"b": 0.0}),
    ("sech", {"b": -1.0}),
    ("gaussian", {"b": 0.0}),
    ("gaussian", {"b": -0.5}),
])
def test_nonpositive_rate_rejected(family, kwargs):
    with pytest.raises(ValueError):
        make_decaying(family, **kwargs)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        make_decaying("lorentzian", b=1.0)
    with pytest.raises(ValueError):
        make_periodic("sawtooth", a=1.0)


def test_logistic_tail_takes_no_param():
    with pytest.raises(ValueError):
        make_decaying("logistic-tail", b=2.0)


# --- periodic families ---------------------------------------------------------

def test_cosh_plus_cos_values():
    g = make_periodic("cosh-plus-cos", a=1.0)
    assert g(0.0) == pytest.approx(1.0 / (math.cosh(1.0) + 1.0), rel=1e-15)
    assert g(0.0) == pytest.approx(0.3932238664829637, rel=1e-15)
    assert g(math.pi) == pytest.approx(1.0 / (math.cosh(1.0) - 1.0), rel=1e-14)
    assert g.period == 2.0 * math.pi


def test_cosh_minus_cos_values():
    g = make_periodic("cosh-minus-cos", a=2.0)
    assert g(0.0) == pytest.approx(1.0 / (math.cosh(2.0) - 1.0), rel=1e-15)
    assert g(math.pi) == pytest.approx(1.0 / (math.cosh(2.0) + 1.0), rel=1e-14)


def test_log_cos_squared_values():
    g = make_periodic("log-cos-squared")
    assert g(0.0) == 0.0
    assert g(1.0) == pytest.approx(math.log(math.cos(1.0) ** 2), rel=1e-15)
    assert g.singular_points == (math.pi / 2.0, 3.0 * math.pi / 2.0)


def test_periodic_param_validation():
    with pytest.raises(ValueError):
        make_periodic("cosh-plus-cos", a=0.0)
    with pytest.raises(ValueError):
        make_periodic("cosh-minus-cos", a=-1.0)
    with pytest.raises(ValueError):
        make_periodic("log-cos-squared", a=1.0)


@pytest.mark.parametrize("family,kwargs", [
    ("cosh-plus-cos", {"a": 1.0}),
    ("cosh-minus-cos", {"a": 0.7}),
])
def test_builtin_periodicity(family, kwargs):
    g = make_periodic(family, **kwargs)
    xs = np.linspace(-5.0, 5.0, 100)
    assert np.allclose(g(xs + g.period), g(xs), rtol=0, atol=1e-14)
    assert not g.unverified_period


# --- expression-defined functions ----------------------------------------------

def test_expr_decaying_evaluates():
    f = make_decaying(expr="sech(2*x)")
    assert f(0.3) == pytest.approx(1.0 / math.cosh(0.6), rel=1e-15)
    assert f.envelope is None


def test_expr_decaying_with_envelope():
    f = make_decaying(expr="sech(x)", envelope=Envelope("exp", 2.0, 1.0))
    assert f.envelope is not None
    assert f.envelope.rate == 1.0


def test_envelope_violation_rejected():
    # claimed decay e^{-2|x|} is false for sech(x)
    with pytest.raises(ValueError):
        make_decaying(expr="sech(x)", envelope=Envelope("exp", 1.0, 2.0))


def test_expr_periodic_requires_period():
    with pytest.raises(ValueError):
        make_periodic(expr="cos(x)")
    with pytest.raises(ValueError):
        make_periodic(expr="cos(x)", period=0.0)


def test_expr_periodic_verified():
    g = make_periodic(expr="cos(x)^2", period=math.pi)
    assert not g.unverified_period
    assert g(0.25) == pytest.approx(math.cos(0.25) ** 2, rel=1e-15)


def test_expr_periodic_wrong_period_flagged():
    g = make_periodic(expr="cos(x)", period=1.5 * math.pi)
    assert g.unverified_period


def test_multiple_of_true_period_is_verified():
    g = make_periodic(expr="cos(x)", period=4.0 * math.pi)
    assert not g.unverified_period


def test_mutually_exclusive_specs():
    with pytest.raises(ValueError):
        make_decaying("sech", b=1.0, expr="sech(x)")
    with pytest.raises(ValueError):
        make_decaying()
    with pytest.raises(ValueError):
        make_periodic("cosh-plus-cos", a=1.0, expr="cos(x)", period=2 * math.pi)


# --- envelopes ------------------------------------------------------------------

def test_envelope_eval():
    env = Envelope("exp", 2.0, 1.0)
    assert env(0.0) == 2.0
    assert env(3.0) == pytest.approx(2.0 * math.exp(-3.0), rel=1e-15)
    genv = Envelope("gauss", 1.0, 0.5)
    assert genv(2.0) == pytest.approx(math.exp(-2.0), rel=1e-15)


def test_envelope_validation():
    with pytest.raises(ValueError):
        Envelope("exp", -1.0, 1.0)
    with pytest.raises(ValueError):
        Envelope("exp", 1.0, 0.0)
    with pytest.raises(ValueError):
        Envelope("poly", 1.0, 1.0)


def test_exp_tail_bound_is_sound():
    env = Envelope("exp", 2.0, 1.5)
    for L in (1.0, 5.0, 20.0):
        # int over |x|>L of 2 e^{-1.5|x|} dx
        exact = 2.0 * (2.0 / 1.5) * math.exp(-1.5 * L)
        assert env.tail_bound(L) == pytest.approx(exact, rel=1e-12)


def test_gauss_tail_bound_is_sound():
    env = Envelope("gauss", 1.0, 1.0)
    # two-sided gaussian tail: sqrt(pi)*erfc(L)
    for L in (1.0, 3.0):
        exact = math.sqrt(math.pi) * math.erfc(L)
        assert env.tail_bound(L) == pytest.approx(exact, rel=1e-10)


def test_cutoff_meets_target():
    env = Envelope("exp", 1.0, 2.0)
    for target in (1e-6, 1e-12):
        L = env.cutoff(target)
        assert env.tail_bound(L) <= target


def test_envelope_dominates_sech():
    # sech(b x) <= 2 e^{-b|x|}: the builtin envelope must hold pointwise
    f = make_decaying("sech", b=1.7)
    env = f.envelope
    assert env is not None
    xs = np.linspace(-40.0, 40.0, 500)
    assert np.all(np.abs(f(xs)) <= env(xs) * (1 + 1e-12))


def test_builtin_envelopes_present():
    assert make_decaying("gaussian", b=2.0).envelope.kind == "gauss"
    assert make_decaying("logistic-tail").envelope.kind == "exp"


# --- call semantics --------------------------------------------------------------

def test_scalar_in_scalar_out():
    f = make_decaying("sech", b=1.0)
    assert isinstance(f(1.0), float)


def test_array_in_array_out():
    g = make_periodic("cosh-minus-cos", a=1.0)
    xs = np.linspace(0, 6, 7)
    out = g(xs)
    assert isinstance(out, np.ndarray)
    assert out.shape == xs.shape


def test_labels_are_informative():
    assert "sech" in make_decaying("sech", b=1.0).label
    assert "cosh-plus-cos" in make_periodic("cosh-plus-cos", a=1.0).label
