"""Bernoulli numbers and polynomials, and the orthonormal basis built from them.

The basis ``phi_0 .. phi_n`` comes from classical Gram-Schmidt, run in exact
rational arithmetic on ``B_0 .. B_n`` under the L2 inner product on
``[0, 1]``.  Each normalised member is stored as ``sqrt(R) * p(z)`` with
``R`` squarefree and ``p`` rational (:class:`SqrtScaled`).  That makes it
possible to check orthonormality exactly and to print the basis in
closed form.
"""

import math
import warnings
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import OrderTooLargeError
from .poly import RationalPoly

__all__ = [
    "DEFAULT_MAX_ORDER",
    "DomainWarning",
    "SqrtScaled",
    "OrthonormalBasis",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "gram_schmidt_basis",
    "eval_basis",
    "inner",
]

DEFAULT_MAX_ORDER = 12


class DomainWarning(UserWarning):
    """Basis evaluated outside [0, 1]."""


def _square_part(n):
    """Split a positive integer as ``n = s**2 * f`` with ``f`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    s, f = 1, 1
    p = 2
    # Radicands here only have prime factors <= 2n+1, so trial division is quick.
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            f *= p
        p += 1 if p == 2 else 2
    return s, f * n


class SqrtScaled:
    """``sqrt(radicand) * rational_part(z)`` with a squarefree radicand.

    Constants (degree-0 rational part) double as exact real numbers of the
    form ``q*sqrt(R)``; those support ``float()``.
    """

    __slots__ = ("radicand", "rational_part")

    def __init__(self, radicand, rational_part):
        if not isinstance(rational_part, RationalPoly):
            rational_part = RationalPoly([rational_part])
        radicand = Fraction(radicand)
        if radicand <= 0:
            raise ValueError("radicand must be positive")
        # sqrt(u/v) = sqrt(u*v)/v
        s, f = _square_part(radicand.numerator * radicand.denominator)
        self.radicand = f
        self.rational_part = rational_part * Fraction(s, radicand.denominator)
        if self.rational_part.is_zero():
            self.radicand = 1

    @classmethod
    def from_inverse_sqrt(cls, m, scale=1):
        """The number ``scale / sqrt(m)``."""
        return cls(Fraction(1, m), RationalPoly([scale]))

    def __eq__(self, other):
        if not isinstance(other, SqrtScaled):
            return NotImplemented
        return self.radicand == other.radicand and self.rational_part == other.rational_part

    def __hash__(self):
        return hash((self.radicand, self.rational_part))

    def __repr__(self):
        return f"SqrtScaled({self.radicand}, {self.rational_part!r})"

    def __str__(self):
        return f"sqrt({self.radicand}) * ({self.rational_part})"

    @property
    def degree(self):
        return self.rational_part.degree

    def __neg__(self):
        return SqrtScaled(self.radicand, -self.rational_part)

    def __mul__(self, other):
        if isinstance(other, SqrtScaled):
            return SqrtScaled(self.radicand * other.radicand, self.rational_part * other.rational_part)
        return SqrtScaled(self.radicand, self.rational_part * other)

    __rmul__ = __mul__

    def antiderivative(self):
        return SqrtScaled(self.radicand, self.rational_part.antiderivative())

    def integral_01(self):
        return SqrtScaled(self.radicand, RationalPoly([self.rational_part.integral_01()]))

    def is_rational(self):
        return self.radicand == 1

    def __float__(self):
        if self.rational_part.degree > 0:
            raise TypeError("only constant SqrtScaled values convert to float")
        return float(self.rational_part[0]) * math.sqrt(self.radicand)

    def float_coeffs(self):
        return self.rational_part.to_float() * math.sqrt(self.radicand)

    def __call__(self, x):
        return math.sqrt(self.radicand) * self.rational_part(np.asarray(x, dtype=float))

    def primitive(self):
        """Return ``(R, coeffs)`` with integer ``coeffs`` of gcd 1 and ``self == sqrt(R)*coeffs``.

        ``R`` is a :class:`~fractions.Fraction` (an integer for every basis
        member, e.g. ``phi_4 -> (9, [1, -20, 90, -140, 70])``).
        """
        cs = self.rational_part.coeffs
        if not cs:
            return Fraction(1), ()
        den = math.lcm(*(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        g = math.gcd(*ints)
        ints = [i // g for i in ints]
        content = Fraction(g, den)
        return self.radicand * content * content, tuple(ints)


def inner(f, g):
    """Exact L2[0,1] inner product of two :class:`SqrtScaled` functions."""
    return (f * g).integral_01()


@lru_cache(maxsize=None)
def _bernoulli_number(n):
    # Kronecker's closed form: B_n = -sum_{j=1}^{n+1} (-1)^j/j C(n+1,j) sum_{k=1}^j k^n
    total = Fraction(0)
    for j in range(1, n + 2):
        inner_sum = sum(k**n for k in range(1, j + 1))
        total += Fraction((-1) ** j * math.comb(n + 1, j) * inner_sum, j)
    # The sum yields the B_1 = +1/2 convention; B_n(0) = B_n(1) needs -1/2.
    return -total if n != 1 else total


def bernoulli_numbers(n_max):
    """Bernoulli numbers ``[B_0(0), ..., B_{n_max}(0)]`` as exact fractions."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    return [_bernoulli_number(n) for n in range(n_max + 1)]


@lru_cache(maxsize=None)
def bernoulli_polynomial(n):
    """Monic Bernoulli polynomial ``B_n(z) = sum_j C(n, j) B_j(0) z^(n-j)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    nums = bernoulli_numbers(n)
    coeffs = [Fraction(0)] * (n + 1)
    for j in range(n + 1):
        coeffs[n - j] = math.comb(n, j) * nums[j]
    return RationalPoly(coeffs)


@lru_cache(maxsize=None)
def _orthogonal_rational(n):
    """Unnormalised orthogonal polynomials ``q_0..q_n`` (monic) from Gram-Schmidt."""
    qs = []
    norms = []
    for k in range(n + 1):
        b = bernoulli_polynomial(k)
        q = b
        for qj, nj in zip(qs, norms):
            q = q - qj * ((b * qj).integral_01() / nj)
        qs.append(q)
        norms.append((q * q).integral_01())
    return tuple(qs), tuple(norms)


class OrthonormalBasis:
    """Orthonormal polynomials ``phi_0 .. phi_n`` on [0, 1].

    Attributes
    ----------
    n : int
        Truncation order; the basis has ``n + 1`` members.
    members : tuple of SqrtScaled
        Exact closed forms.
    power_coeffs : ndarray, shape (n+1, n+1)
        Row ``k`` holds the float power-basis coefficients of ``phi_k``.
    """

    def __init__(self, members):
        self.members = tuple(members)
        self.n = len(self.members) - 1
        size = self.n + 1
        self.power_coeffs = np.zeros((size, size))
        for k, m in enumerate(self.members):
            fc = m.float_coeffs()
            self.power_coeffs[k, : len(fc)] = fc
        self.power_coeffs.setflags(write=False)
        # Three-term recurrence z*phi_k = a_k phi_{k+1} + b_k phi_k + a_{k-1} phi_{k-1},
        # with coefficients taken exactly from the members; used for stable evaluation.
        z = SqrtScaled(1, RationalPoly([0, 1]))
        self._diag = np.array([float(inner(z * m, m)) for m in self.members])
        self._offdiag = np.array(
            [float(inner(z * self.members[k], self.members[k + 1])) for k in range(self.n)]
        )
        self._phi0 = float(self.members[0])

    def __len__(self):
        return self.n + 1

    def __getitem__(self, k):
        return self.members[k]

    def __repr__(self):
        return f"OrthonormalBasis(n={self.n})"

    def __call__(self, x):
        """Values ``[phi_0(x), ..., phi_n(x)]``; shape ``(n+1,) + x.shape``."""
        x = np.asarray(x, dtype=float)
        out = np.empty((self.n + 1,) + x.shape)
        out[0] = self._phi0
        if self.n >= 1:
            out[1] = (x - self._diag[0]) * out[0] / self._offdiag[0]
        for k in range(1, self.n):
            out[k + 1] = ((x - self._diag[k]) * out[k] - self._offdiag[k - 1] * out[k - 1]) / self._offdiag[k]
        return out

    def gram(self):
        """Exact Gram matrix as nested lists of :class:`SqrtScaled` constants."""
        return [[inner(a, b) for b in self.members] for a in self.members]


@lru_cache(maxsize=None)
def _basis(n):
    qs, norms = _orthogonal_rational(n)
    # phi = q / sqrt(norm) = sqrt(1/norm) * q
    return OrthonormalBasis(SqrtScaled(1 / nrm, q) for q, nrm in zip(qs, norms))


def gram_schmidt_basis(n, max_order=DEFAULT_MAX_ORDER):
    """Orthonormal basis of order ``n`` derived from Bernoulli polynomials.

    Raises
    ------
    OrderTooLargeError
        If ``n > max_order``; rational coefficients grow combinatorially.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    if n > max_order:
        raise OrderTooLargeError(
            f"order {n} exceeds the configured maximum {max_order}; "
            "basis coefficients grow combinatorially with the order"
        )
    return _basis(n)


def eval_basis(basis, x):
    """Evaluate every basis member at ``x`` (scalar or array)."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa < 0.0) | (xa > 1.0)):
        warnings.warn("basis evaluated outside [0, 1]; extrapolating", DomainWarning, stacklevel=2)
    return basis(xa)
