from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bernoulli_ivp.basis import bernoulli_polynomial
from bernoulli_ivp.poly import (
    RationalPoly,
    add,
    definite_integral_01,
    eval_poly,
    integrate_from_zero,
    mul,
)

B1 = RationalPoly([F(-1, 2), 1])
B2 = RationalPoly([F(1, 6), -1, 1])

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, max_size=6).map(RationalPoly)


def test_normalisation():
    assert RationalPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert RationalPoly([0, 0]).coeffs == ()
    assert RationalPoly().degree == -1
    assert RationalPoly([F(2, 4)]).coeffs[0] == F(1, 2)


def test_add_examples():
    assert add(RationalPoly([1, 1]), RationalPoly([-1, -1])).coeffs == ()
    assert add(B1, B1) == RationalPoly([-1, 2])
    assert add(RationalPoly([0, 0, 1]), RationalPoly([0, 1])) == RationalPoly([0, 1, 1])


def test_mul_examples():
    assert mul(B1, B1) == RationalPoly([F(1, 4), -1, 1])
    assert mul(B2, RationalPoly()).is_zero()
    # rational part of phi_1 is (2z - 1); sqrt(3)^2 = 3
    assert mul(RationalPoly([-1, 2]), RationalPoly([-1, 2])) * 3 == RationalPoly([3, -12, 12])


def test_integrate_from_zero_examples():
    assert integrate_from_zero(RationalPoly([1])) == RationalPoly([0, 1])
    assert integrate_from_zero(B2) == RationalPoly([0, F(1, 6), F(-1, 2), F(1, 3)])
    assert integrate_from_zero(B2) == bernoulli_polynomial(3) / 3
    assert integrate_from_zero(RationalPoly()).is_zero()


def test_definite_integral_examples():
    assert definite_integral_01(B1) == 0
    assert definite_integral_01(bernoulli_polynomial(4)) == 0
    assert definite_integral_01(RationalPoly([0, 0, 1])) == F(1, 3)


def test_eval_examples():
    assert eval_poly(B2, 1.0) - eval_poly(B2, 0.0) == 0
    assert B2(F(1, 2)) == F(-1, 12)
    assert eval_poly(B2, 0.5) == pytest.approx(-1 / 12, abs=1e-16)
    assert eval_poly(RationalPoly(), 7.0) == 0
    np.testing.assert_allclose(eval_poly(B1, np.array([0.0, 1.0])), [-0.5, 0.5])


def test_compose_linear():
    p = RationalPoly([1, 0, 1])  # 1 + z^2
    assert p.compose_linear(1, 2) == RationalPoly([2, 4, 4])


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys, polys)
def test_mul_degree(p, q):
    if p and q:
        assert (p * q).degree == p.degree + q.degree


@given(polys)
def test_derivative_inverts_integration(p):
    q = integrate_from_zero(p)
    assert q.derivative() == p
    assert q(0) == 0


@pytest.mark.parametrize("n", range(1, 10))
def test_bernoulli_integral_vanishes(n):
    assert definite_integral_01(bernoulli_polynomial(n)) == 0


@pytest.mark.parametrize("n", range(1, 10))
def test_bernoulli_difference_at_zero(n):
    b = bernoulli_polynomial(n)
    assert b(1) - b(0) == (1 if n == 1 else 0)
