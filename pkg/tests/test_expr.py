import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernoulli_ivp.errors import LexError, ParseError
from bernoulli_ivp.expr import (
    BinOp,
    Call,
    Closure,
    Constant,
    Neg,
    Num,
    Polynomial,
    Var,
    as_integrable,
    eval_expr,
    parse,
    pretty,
    to_polynomial,
)
from bernoulli_ivp.poly import RationalPoly

CORPUS = [
    "x",
    "1",
    "2.5",
    "1e-3",
    "-x",
    "--x",
    "x + 1",
    "x - 1 - 2",
    "x - (1 - 2)",
    "2 * x + 3",
    "2 * (x + 3)",
    "x / 2 / 3",
    "x / (2 / 3)",
    "x^2",
    "x^2^3",
    "(x^2)^3",
    "-x^2",
    "(-x)^2",
    "x^-1",
    "x^(1 / 2)",
    "exp(-x)",
    "2 * cos(x)^4",
    "2 * cos(x)^2",
    "tan(x)",
    "sin(x) * cos(x)",
    "log(1 + x)",
    "sqrt(x + 1) / (x + 2)",
    "sinh(x) - cosh(x)",
    "tanh(2 * x)",
    "abs(x - 0.5)",
    "exp(-5 / 2 * x) * (cosh(sqrt(13) / 2 * x) + 3 / sqrt(13) * sinh(sqrt(13) / 2 * x)) - exp(-x)",
    "2 - 2 * cos(sqrt(2) * sin(x)^2) - sin(x)",
    "2 - sin(x)^2 - 2 * cos(sqrt(2) * sin(x))",
    "1 / (1 + x^2)",
    "x * -1",
    "-(x + 1)",
    "-(x * 2)",
    "-sin(x)",
    "3 - -x",
    "x^2 + 2 * x + 1",
    "(x + 1) * (x - 1)",
    "exp(exp(x))",
    "cos(x)^2 + sin(x)^2",
    "x^0.5",
    "0.1 + 0.2",
    "1.5e10 * x",
    "(1 + x)^3",
    "x / -2",
    "2^3^2",
    "sqrt(abs(x - 0.25)) * log(2 + x)",
]

# expression, x, value worked out independently with the math module
HAND_CHECKED = [
    ("1+2*3", 0.0, 7.0),
    ("tan(x)", 0.0, 0.0),
    ("exp(-x)", 0.0, 1.0),
    ("2*cos(x)^4", 0.0, 2.0),
    ("exp(-x)", 1.0, math.exp(-1.0)),
    ("2*cos(x)^4", 0.5, 2 * math.cos(0.5) ** 4),
    ("tan(x)", 1.0, math.tan(1.0)),
    ("x-1-2", 10.0, 7.0),
    ("2^3^2", 0.0, 512.0),
    ("-x^2", 3.0, -9.0),
    ("(-x)^2", 3.0, 9.0),
    ("x^-1", 4.0, 0.25),
    ("x^0.5", 2.0, math.sqrt(2.0)),
    ("x/2/4", 1.0, 0.125),
    ("sqrt(13)/2", 0.0, math.sqrt(13) / 2),
    ("log(1+x)", 1.0, math.log(2.0)),
    ("sinh(x)-cosh(x)", 0.7, math.sinh(0.7) - math.cosh(0.7)),
    ("abs(x-0.5)", 0.2, 0.3),
    ("tanh(2*x)", 0.3, math.tanh(0.6)),
    ("2-sin(x)^2-2*cos(sqrt(2)*sin(x))", 0.8, 2 - math.sin(0.8) ** 2 - 2 * math.cos(math.sqrt(2) * math.sin(0.8))),
]


def test_parse_examples():
    assert parse("exp(-x)") == Call("exp", Neg(Var()))
    assert parse("2*cos(x)^4") == BinOp("*", Num(2.0), BinOp("^", Call("cos", Var()), Num(4.0)))
    assert eval_expr(parse("1+2*3"), 0.0) == 7.0


def test_corpus_size():
    assert len(CORPUS) == 50 and len(set(CORPUS)) == 50
    assert len(HAND_CHECKED) == 20


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip_fixed_point(src):
    once = pretty(parse(src))
    twice = pretty(parse(once))
    assert once == twice
    assert parse(once) == parse(src)


@pytest.mark.parametrize("src, x, expected", HAND_CHECKED)
def test_hand_checked_values(src, x, expected):
    got = eval_expr(parse(src), x)
    assert got == pytest.approx(expected, rel=1e-15, abs=0 if expected else 1e-300)


def test_associativity():
    assert parse("x-1-2") == BinOp("-", BinOp("-", Var(), Num(1.0)), Num(2.0))
    assert parse("x^2^3") == BinOp("^", Var(), BinOp("^", Num(2.0), Num(3.0)))
    assert parse("-x^2") == Neg(BinOp("^", Var(), Num(2.0)))


@pytest.mark.parametrize(
    "src, exc, pos",
    [
        ("2 $ x", LexError, 2),
        ("2x", ParseError, 1),
        ("sin x", ParseError, 4),
        ("foo(x)", ParseError, 0),
        ("(x + 1", ParseError, 6),
        ("x +", ParseError, 3),
        ("", ParseError, 0),
        ("x^x", ParseError, 1),
        ("y + 1", ParseError, 0),
    ],
)
def test_errors_report_position(src, exc, pos):
    with pytest.raises(exc) as info:
        parse(src)
    assert info.value.position == pos
    assert f"position {pos}" in str(info.value)


def test_vectorised_evaluation():
    x = np.linspace(0, 1, 5)
    np.testing.assert_allclose(eval_expr(parse("x^2 + 1"), x), x**2 + 1)
    np.testing.assert_allclose(eval_expr(parse("3"), x), 3.0)


def test_domain_violation_is_non_finite():
    assert math.isnan(eval_expr(parse("log(x)"), -1.0))
    assert math.isinf(eval_expr(parse("1/x"), 0.0))


def test_integer_powers_by_squaring():
    e = parse("x^13")
    assert eval_expr(e, 1.1) == pytest.approx(1.1**13, rel=1e-15)
    assert eval_expr(parse("x^-3"), 2.0) == 0.125


def test_to_polynomial():
    assert to_polynomial(parse("2 + 2*x^2")) == RationalPoly([2, 0, 2])
    assert to_polynomial(parse("(x+1)*(x-1)/2")) == RationalPoly([Fraction(-1, 2), 0, Fraction(1, 2)])
    assert to_polynomial(parse("sin(x)")) is None
    assert to_polynomial(parse("x^0.5")) is None
    assert to_polynomial(parse("1/x")) is None


def test_as_integrable_classification():
    assert isinstance(as_integrable("5"), Constant)
    assert as_integrable("sqrt(4)*2").value == 4.0
    assert isinstance(as_integrable("x^2 - 1"), Polynomial)
    assert isinstance(as_integrable("tan(x)"), Closure)
    assert isinstance(as_integrable(np.sin), Closure)
    assert as_integrable(3)(np.zeros(4)).tolist() == [3.0] * 4


small = st.integers(1, 9)


@given(small, small, small)
def test_subtraction_left_associative(a, b, c):
    assert eval_expr(parse(f"{a}-{b}-{c}"), 0.0) == (a - b) - c


@given(small, small, small)
def test_division_left_associative(a, b, c):
    assert eval_expr(parse(f"{a}/{b}/{c}"), 0.0) == (a / b) / c


@given(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2))
def test_power_right_associative(a, b, c):
    assert eval_expr(parse(f"{a}^{b}^{c}"), 0.0) == a ** (b**c)


@given(small, small, small)
def test_mul_binds_tighter_than_add(a, b, c):
    assert eval_expr(parse(f"{a}+{b}*{c}"), 0.0) == a + b * c
    assert eval_expr(parse(f"{a}*{b}+{c}"), 0.0) == a * b + c
