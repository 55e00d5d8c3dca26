"""Expression language: grammar, precedence, errors, IEEE semantics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixedparseval import expr as E


def ev(text, x):
    return E.evaluate(E.parse(text), x)


# --- structure ---------------------------------------------------------------

def test_number_forms():
    assert ev("2", 0.0) == 2.0
    assert ev("1.5", 0.0) == 1.5
    assert ev(".5", 0.0) == 0.5
    assert ev("2.", 0.0) == 2.0
    assert ev("1.5e-3", 0.0) == 1.5e-3
    assert ev("2E2", 0.0) == 200.0


def test_constants_fold_to_numbers():
    assert E.parse("pi").root == E.Num(math.pi)
    assert E.parse("e").root == E.Num(math.e)


def test_variable():
    assert E.parse("x").root == E.Var()
    assert ev("x", 3.25) == 3.25


def test_power_binds_tighter_than_unary_minus():
    # -x^2 must parse as -(x^2)
    ast = E.parse("-x^2")
    assert ast.root == E.Neg(E.BinOp("^", E.Var(), E.Num(2.0)))
    assert ev("-x^2", 3.0) == -9.0


def test_power_right_associative():
    assert ev("2^3^2", 0.0) == 512.0  # 2^(3^2), not (2^3)^2


def test_unary_minus_in_exponent():
    assert ev("2^-2", 0.0) == 0.25
    assert ev("x^-1", 4.0) == 0.25


def test_precedence_mul_over_add():
    assert ev("2+3*4", 0.0) == 14.0
    assert ev("2*x^3", 2.0) == 16.0
    assert ev("(2+3)*4", 0.0) == 20.0


def test_division_left_associative():
    assert ev("8/4/2", 0.0) == 1.0
    assert ev("8-4-2", 0.0) == 2.0


def test_double_negation():
    assert ev("--x", 5.0) == 5.0
    assert ev("2--3", 0.0) == 5.0


@pytest.mark.parametrize("name,fn", [
    ("sin", math.sin), ("cos", math.cos), ("tan", math.tan),
    ("sinh", math.sinh), ("cosh", math.cosh), ("tanh", math.tanh),
    ("exp", math.exp), ("sqrt", math.sqrt),
])
def test_function_values(name, fn):
    assert ev(f"{name}(x)", 0.7) == pytest.approx(fn(0.7), rel=1e-15)


def test_sech_abs_log():
    assert ev("sech(x)", 1.3) == pytest.approx(1.0 / math.cosh(1.3), rel=1e-15)
    assert ev("abs(x)", -2.5) == 2.5
    assert ev("log(x)", math.e) == pytest.approx(1.0, rel=1e-15)


def test_whitespace_insensitive():
    assert ev("  1 +   2 * x ", 3.0) == 7.0


# --- errors ------------------------------------------------------------------

def test_syntax_error_has_position():
    with pytest.raises(E.ParseError) as exc:
        E.parse("2 @ 3")
    assert exc.value.position == 2
    assert "position 2" in str(exc.value)


def test_trailing_garbage_position():
    with pytest.raises(E.ParseError) as exc:
        E.parse("1 + 2 )")
    assert exc.value.position == 6


def test_unexpected_end():
    with pytest.raises(E.ParseError):
        E.parse("2 +")
    with pytest.raises(E.ParseError):
        E.parse("(x")


def test_unknown_identifier_named():
    with pytest.raises(E.UnknownIdentifierError) as exc:
        E.parse("foo(x)")
    assert exc.value.name == "foo"
    assert "foo" in str(exc.value)
    with pytest.raises(E.UnknownIdentifierError) as exc:
        E.parse("2*bar")
    assert exc.value.name == "bar"


def test_constant_is_not_a_function():
    with pytest.raises(E.ParseError) as exc:
        E.parse("pi(3)")
    assert "not a function" in str(exc.value)
    assert not isinstance(exc.value, E.UnknownIdentifierError)


def test_function_needs_parens():
    with pytest.raises(E.ParseError):
        E.parse("sech x")


def test_empty_input():
    with pytest.raises(E.ParseError):
        E.parse("")


def test_deep_nesting_is_parse_error_not_crash():
    with pytest.raises(E.ParseError):
        E.parse("(" * 500 + "x" + ")" * 500)


# --- IEEE semantics ----------------------------------------------------------

def test_division_by_zero_is_inf():
    assert ev("1/x", 0.0) == math.inf
    assert ev("-1/x", 0.0) == -math.inf


def test_log_domain_gives_nan_or_inf():
    assert math.isnan(ev("log(x)", -1.0))
    assert ev("log(x)", 0.0) == -math.inf


def test_sqrt_negative_is_nan():
    assert math.isnan(ev("sqrt(x)", -4.0))


def test_overflow_saturates():
    assert ev("exp(x)", 1e4) == math.inf
    assert ev("sech(x)", 1e4) == 0.0


def test_fractional_power_of_negative_is_nan():
    assert math.isnan(ev("x^0.5", -2.0))
    assert ev("x^3", -2.0) == -8.0


# --- reference-evaluator cross-check -----------------------------------------

def _ref_eval(node, x):
    if isinstance(node, E.Num):
        return node.value
    if isinstance(node, E.Var):
        return x
    if isinstance(node, E.Neg):
        return -_ref_eval(node.operand, x)
    if isinstance(node, E.BinOp):
        a = _ref_eval(node.left, x)
        b = _ref_eval(node.right, x)
        with np.errstate(all="ignore"):
            return {"+": np.add, "-": np.subtract, "*": np.multiply,
                    "/": np.divide, "^": np.power}[node.op](a, b)
    fn = {"sin": np.sin, "cos": np.cos, "tan": np.tan, "sinh": np.sinh,
          "cosh": np.cosh, "tanh": np.tanh, "sech": lambda v: 1.0 / np.cosh(v),
          "exp": np.exp, "log": np.log, "abs": np.abs, "sqrt": np.sqrt}[node.func]
    with np.errstate(all="ignore"):
        return fn(_ref_eval(node.arg, x))


_leaf = st.sampled_from(["x", "x", "2", "0.5", "pi", "3"])
_func = st.sampled_from(["sin", "cos", "tanh", "sech", "exp", "abs"])
_op = st.sampled_from(["+", "-", "*", "/"])


@st.composite
def _expr_text(draw, depth=0):
    if depth >= 3 or draw(st.booleans()):
        return draw(_leaf)
    kind = draw(st.integers(0, 3))
    if kind == 0:
        return f"{draw(_expr_text(depth + 1))}{draw(_op)}{draw(_expr_text(depth + 1))}"
    if kind == 1:
        return f"{draw(_func)}({draw(_expr_text(depth + 1))})"
    if kind == 2:
        return f"-({draw(_expr_text(depth + 1))})"
    return f"({draw(_expr_text(depth + 1))})"


@given(_expr_text(), st.floats(-10, 10, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_vm_matches_reference_evaluator(text, x):
    ast = E.parse(text)
    got = E.evaluate(ast, x)
    want = float(_ref_eval(ast.root, x))
    if math.isnan(want):
        assert math.isnan(got)
    elif math.isinf(want):
        assert got == want
    else:
        assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


@given(st.text(max_size=40))
@settings(max_examples=300, deadline=None)
def test_parse_total_over_arbitrary_text(text):
    # arbitrary input either parses or raises ParseError -- nothing else
    try:
        ast = E.parse(text)
    except E.ParseError:
        return
    E.evaluate(ast, 0.5)  # and anything that parses must evaluate


def test_array_evaluation_matches_scalar():
    ast = E.parse("sech(2*x)+cos(x)/2")
    xs = np.linspace(-4, 4, 17)
    out = E.evaluate(ast, xs)
    assert out.shape == xs.shape
    for xi, oi in zip(xs, out):
        assert oi == E.evaluate(ast, float(xi))
