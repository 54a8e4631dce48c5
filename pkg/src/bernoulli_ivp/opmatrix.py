"""Integration operational matrix and product-linearisation matrices.

Row convention: row ``i`` holds the basis expansion of ``integral_0^z phi_i``
(integration kind) or of ``phi_i * f`` (product kind).  With that
convention the integral of ``C^T phi`` is ``C^T Theta phi``.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import quadrature
from .basis import SqrtScaled
from .expr import as_integrable
from .poly import RationalPoly
from .projection import project

__all__ = [
    "MatrixKind",
    "OpMatrix",
    "build_theta",
    "theta_row_defects",
    "verify_theta_identity",
    "build_product_matrix",
    "PRODUCT_MODES",
]

PRODUCT_MODES = ("paper", "direct")


class MatrixKind(enum.Enum):
    INTEGRATION = "integration"
    PRODUCT = "product"


@dataclass(frozen=True, eq=False)
class OpMatrix:
    n: int
    entries: np.ndarray
    kind: MatrixKind
    exact: dict = field(default=None, repr=False)  # (i, j) -> SqrtScaled, integration kind only

    def __post_init__(self):
        e = np.array(self.entries, dtype=float)
        if e.shape != (self.n + 1, self.n + 1):
            raise ValueError(f"expected a {self.n + 1}x{self.n + 1} matrix, got {e.shape}")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    @property
    def shape(self):
        return self.entries.shape


def _theta_exact(n):
    entries = {(0, 0): SqrtScaled(1, RationalPoly([Fraction(1, 2)]))}
    for i in range(n):
        # 1 / (2 sqrt((2i+1)(2i+3)))
        v = SqrtScaled(Fraction(1, (2 * i + 1) * (2 * i + 3)), RationalPoly([Fraction(1, 2)]))
        entries[(i, i + 1)] = v
        entries[(i + 1, i)] = -v
    return entries


def build_theta(n):
    """Operational matrix of integration of order ``n``.

    Tridiagonal: ``Theta[0, 0] = 1/2`` and
    ``Theta[i, i+1] = -Theta[i+1, i] = 1 / (2 sqrt((2i+1)(2i+3)))``.
    The last row lacks the ``phi_{n+1}`` term, which falls outside the basis.
    """
    if n < 0:
        raise ValueError("order must be non-negative")
    exact = _theta_exact(n)
    entries = np.zeros((n + 1, n + 1))
    for (i, j), v in exact.items():
        entries[i, j] = float(v)
    return OpMatrix(n, entries, MatrixKind.INTEGRATION, exact)


def _row_defect(basis, theta, i):
    # integral of phi_i minus sum_j Theta_ij phi_j, grouped by radicand
    groups = {}

    def acc(term):
        groups[term.radicand] = groups.get(term.radicand, RationalPoly()) + term.rational_part

    acc(basis.members[i].antiderivative())
    for (r, j), v in theta.exact.items():
        if r == i:
            acc(-(v * basis.members[j]))
    return groups


def _defect_size(groups):
    nonzero = [(r, p) for r, p in groups.items() if p]
    if not nonzero:
        return 0.0
    total = np.zeros(max(len(p) for _, p in nonzero))
    for radicand, p in nonzero:
        total[: len(p)] += SqrtScaled(radicand, p).float_coeffs()
    return float(np.max(np.abs(total)))


def theta_row_defects(basis, theta):
    """Per-row defect of ``integral_0^z phi = Theta phi``, computed exactly.

    Each entry is the largest power-basis coefficient (in absolute value) of
    the difference polynomial.  It is exactly ``0.0`` when the row identity
    holds in exact arithmetic.
    """
    if theta.kind is not MatrixKind.INTEGRATION or theta.exact is None:
        raise ValueError("need an integration matrix built by build_theta")
    if theta.n != basis.n:
        raise ValueError(f"dimension mismatch: basis order {basis.n}, matrix order {theta.n}")
    return [_defect_size(_row_defect(basis, theta, i)) for i in range(basis.n + 1)]


def verify_theta_identity(basis, theta):
    """Largest defect over rows ``0 .. n-1`` (zero when the closed form is right).

    The last row's defect is the truncated ``phi_{n+1}`` tail; get it from
    :func:`theta_row_defects`.
    """
    defects = theta_row_defects(basis, theta)
    return max(defects[:-1], default=0.0)


def build_product_matrix(basis, f, mode="paper"):
    """Matrix ``M`` with ``M[i, j] = <phi_i * g, phi_j>``.

    ``mode="paper"`` takes ``g`` as the degree-``n`` projection of ``f`` and
    integrates the resulting polynomial products exactly.  ``mode="direct"``
    uses ``g = f`` and adaptive quadrature.
    """
    if mode not in PRODUCT_MODES:
        raise ValueError(f"unknown product mode {mode!r}; expected one of {PRODUCT_MODES}")
    f = as_integrable(f)
    n = basis.n
    if mode == "paper":
        a = project(f, basis).values
        x, w = quadrature.gauss_legendre(quadrature.nodes_for_degree(3 * n))
        V = basis(x)
        M = (V * (w * (a @ V))) @ V.T
    else:

        def rule(x, w):
            V = basis(x)
            return (V * (w * quadrature.sample(f, x))) @ V.T

        M = quadrature.adaptive(rule)
    return OpMatrix(n, M, MatrixKind.PRODUCT)
