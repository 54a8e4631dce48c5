"""Exact univariate polynomials with rational coefficients.

Coefficients are stored densely in ascending powers as
:class:`fractions.Fraction` values, so ``RationalPoly([1, 0, 3])`` is
``1 + 3*z**2``.  Instances are immutable and hashable; trailing zeros are
stripped on construction, so the zero polynomial has an empty coefficient
tuple and equality is plain tuple equality.
"""

from fractions import Fraction
from itertools import zip_longest
from numbers import Rational

import numpy as np

__all__ = [
    "RationalPoly",
    "add",
    "mul",
    "integrate_from_zero",
    "definite_integral_01",
    "eval_poly",
]


def _frac(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational coefficient, got {value!r}")


class RationalPoly:
    __slots__ = ("_coeffs",)

    def __init__(self, coeffs=()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs = tuple(cs)

    @classmethod
    def monomial(cls, k, coeff=1):
        return cls([0] * k + [coeff])

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def degree(self):
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self):
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __len__(self):
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self._coeffs == RationalPoly([other])._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        return f"RationalPoly([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self._coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            if mono and abs(c) == 1:
                body = mono
            elif mono:
                body = f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalPoly):
            return other
        return RationalPoly([other])

    def __add__(self, other):
        q = self._coerce(other)
        return RationalPoly(a + b for a, b in zip_longest(self._coeffs, q._coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self._coeffs)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            s = _frac(other)
            return RationalPoly(c * s for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return RationalPoly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = _frac(scalar)
        return RationalPoly(c / s for c in self._coeffs)

    def derivative(self):
        return RationalPoly(k * c for k, c in enumerate(self._coeffs) if k > 0)

    def antiderivative(self):
        """Antiderivative vanishing at zero."""
        if not self._coeffs:
            return RationalPoly()
        return RationalPoly([0] + [c / (k + 1) for k, c in enumerate(self._coeffs)])

    def integral_01(self):
        return sum((c / (k + 1) for k, c in enumerate(self._coeffs)), Fraction(0))

    def __call__(self, x):
        """Evaluate by Horner's rule.

        Exact for ``int``/``Fraction`` arguments, floating point otherwise
        (scalars or numpy arrays).
        """
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self._coeffs):
                acc = acc * x + c
            return acc
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self._coeffs):
            acc = acc * x + float(c)
        return acc if acc.ndim else float(acc)

    def compose_linear(self, shift, scale):
        """Return ``p(shift + scale*z)`` exactly."""
        lin = RationalPoly([shift, scale])
        acc = RationalPoly()
        for c in reversed(self._coeffs):
            acc = acc * lin + c
        return acc

    def to_float(self):
        return np.array([float(c) for c in self._coeffs], dtype=float)


def add(p, q):
    return p + q


def mul(p, q):
    return p * q


def integrate_from_zero(p):
    return p.antiderivative()


def definite_integral_01(p):
    return p.integral_01()


def eval_poly(p, x):
    """Floating-point Horner evaluation."""
    return p(np.asarray(x, dtype=float))
