"""Best L2 approximation in the orthonormal basis: ``c_k = <f, phi_k>``."""

from dataclasses import dataclass

import numpy as np

from . import quadrature
from .basis import SqrtScaled, inner
from .expr import Constant, Polynomial, as_integrable

__all__ = ["CoeffVector", "project", "reconstruct", "coeffs_to_power_basis"]


@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Expansion coefficients with respect to a particular basis."""

    values: np.ndarray
    basis: object

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).copy()
        if v.shape != (self.basis.n + 1,):
            raise ValueError(f"expected {self.basis.n + 1} coefficients, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("coefficients must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return self.basis.n

    def __len__(self):
        return len(self.values)

    def __call__(self, x):
        return reconstruct(self, x)


def _exact_projection(poly, basis):
    f = SqrtScaled(1, poly)
    return np.array([float(inner(f, m)) for m in basis.members])


def project(f, basis):
    """Project ``f`` onto ``basis``.

    Polynomials and constants are integrated exactly; anything else goes
    through adaptive Gauss-Legendre quadrature.

    Raises
    ------
    QuadratureError
        If ``f`` is not finite at some quadrature node.
    """
    f = as_integrable(f)
    if isinstance(f, Constant):
        values = np.zeros(basis.n + 1)
        values[0] = f.value * float(basis.members[0])
    elif isinstance(f, Polynomial):
        values = _exact_projection(f.poly, basis)
    else:
        values = quadrature.adaptive(lambda x, w: basis(x) @ (w * quadrature.sample(f, x)))
    return CoeffVector(values, basis)


def reconstruct(c, x):
    """Evaluate ``sum_k c_k phi_k(x)``."""
    return np.tensordot(c.values, c.basis(x), axes=1)


def coeffs_to_power_basis(c, basis=None):
    """Ascending power-basis coefficients of ``sum_k c_k phi_k``.

    Trailing zeros are dropped; the zero expansion gives an empty array.
    """
    basis = basis or c.basis
    values = c.values if isinstance(c, CoeffVector) else np.asarray(c, dtype=float)
    out = values @ basis.power_coeffs
    nz = np.flatnonzero(out)
    return out[: nz[-1] + 1] if nz.size else out[:0]
