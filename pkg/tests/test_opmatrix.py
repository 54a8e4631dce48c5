import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bernoulli_ivp.basis import gram_schmidt_basis
from bernoulli_ivp.opmatrix import (
    MatrixKind,
    build_product_matrix,
    build_theta,
    theta_row_defects,
    verify_theta_identity,
)


def test_theta_small_cases():
    np.testing.assert_array_equal(build_theta(0).entries, [[0.5]])
    s = 1 / math.sqrt(3)
    np.testing.assert_allclose(build_theta(1).entries, 0.5 * np.array([[1, s], [-s, 0]]), rtol=1e-15)
    assert build_theta(2).entries[1, 2] == pytest.approx(1 / (2 * math.sqrt(15)), rel=1e-15)
    assert build_theta(3).kind is MatrixKind.INTEGRATION


@pytest.mark.parametrize("n", [1, 4, 9, 12])
def test_theta_pattern(n):
    T = build_theta(n).entries
    sym = T + T.T
    expected = np.zeros_like(T)
    expected[0, 0] = 1.0
    np.testing.assert_allclose(sym, expected, rtol=0, atol=1e-15)
    band = np.abs(np.subtract.outer(np.arange(n + 1), np.arange(n + 1))) <= 1
    assert np.all(T[~band] == 0.0)
    for i in range(n):
        assert T[i, i + 1] == pytest.approx(1 / (2 * math.sqrt((2 * i + 1) * (2 * i + 3))), rel=1e-15)


def test_theta_entries_are_readonly():
    with pytest.raises(ValueError):
        build_theta(2).entries[0, 0] = 1.0


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_theta_identity_rows_exact(n):
    b = gram_schmidt_basis(n)
    defects = theta_row_defects(b, build_theta(n))
    assert defects[:-1] == [0.0] * n
    assert verify_theta_identity(b, build_theta(n)) == 0.0


def test_theta_last_row_is_truncated_tail():
    n = 5
    defects = theta_row_defects(gram_schmidt_basis(n), build_theta(n))
    tail = gram_schmidt_basis(n + 1)[n + 1].float_coeffs() / (2 * math.sqrt(11 * 13))
    assert defects[n] == pytest.approx(np.max(np.abs(tail)), rel=1e-14)


def test_theta_identity_catches_wrong_entry():
    n = 3
    theta = build_theta(n)
    bad = dict(theta.exact)
    bad[(1, 2)] = bad[(1, 2)] * 2
    tampered = type(theta)(n, theta.entries, theta.kind, bad)
    assert verify_theta_identity(gram_schmidt_basis(n), tampered) > 0


def test_theta_identity_dimension_mismatch():
    with pytest.raises(ValueError, match="mismatch"):
        verify_theta_identity(gram_schmidt_basis(3), build_theta(4))


@pytest.mark.parametrize("mode", ["paper", "direct"])
def test_product_matrix_constants(mode):
    b = gram_schmidt_basis(6)
    np.testing.assert_allclose(build_product_matrix(b, 1.0, mode).entries, np.eye(7), atol=1e-13)
    np.testing.assert_allclose(build_product_matrix(b, -2.5, mode).entries, -2.5 * np.eye(7), atol=1e-13)


@pytest.mark.parametrize("mode", ["paper", "direct"])
def test_product_matrix_identity_function(mode):
    # <phi_i x, phi_j> worked out by hand for n = 1
    M = build_product_matrix(gram_schmidt_basis(1), "x", mode).entries
    off = 1 / (2 * math.sqrt(3))
    np.testing.assert_allclose(M, [[0.5, off], [off, 0.5]], rtol=1e-14)


def test_product_matrix_modes_agree_on_low_degree_polynomials():
    b = gram_schmidt_basis(5)
    f = "1 - 3*x + x^2"
    np.testing.assert_allclose(
        build_product_matrix(b, f, "paper").entries, build_product_matrix(b, f, "direct").entries, atol=1e-13
    )


def test_product_matrix_rejects_unknown_mode():
    with pytest.raises(ValueError):
        build_product_matrix(gram_schmidt_basis(2), "x", "magic")


coef = st.floats(-3, 3, allow_nan=False)


@settings(max_examples=25, deadline=None)
@given(coef, coef, coef, coef, st.sampled_from(["paper", "direct"]))
def test_product_matrix_linear_in_f(alpha, beta, k1, k2, mode):
    b = gram_schmidt_basis(5)
    f = lambda x: np.sin(k1 * x) + x**2
    g = lambda x: np.exp(k2 * x)
    h = lambda x: alpha * f(x) + beta * g(x)
    Mf = build_product_matrix(b, f, mode).entries
    Mg = build_product_matrix(b, g, mode).entries
    Mh = build_product_matrix(b, h, mode).entries
    np.testing.assert_allclose(Mh, alpha * Mf + beta * Mg, atol=1e-12)
