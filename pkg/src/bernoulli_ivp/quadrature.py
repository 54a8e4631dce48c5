"""Gauss-Legendre rules on [0, 1] and the adaptive doubling driver used for projections."""

import math
import warnings
from functools import lru_cache

import numpy as np

from .errors import QuadratureError

START_NODES = 64
MAX_NODES = 1024
AGREEMENT_TOL = 1e-13


class QuadratureWarning(UserWarning):
    pass


@lru_cache(maxsize=None)
def _gauss_legendre_pm1(m):
    """Nodes/weights on [-1, 1] by Newton iteration on P_m."""
    i = np.arange(1, m + 1)
    x = np.cos(np.pi * (i - 0.25) / (m + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for k in range(2, m + 1):
            p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
        # p1 = P_m(x), p0 = P_{m-1}(x)
        dp = m * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, m + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = m * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


def gauss_legendre(m):
    """``m``-point Gauss-Legendre nodes and weights mapped to [0, 1].

    Exact for polynomials of degree ``2m - 1``.
    """
    if m < 1:
        raise ValueError("need at least one node")
    if m == 1:
        return np.array([0.5]), np.array([1.0])
    x, w = _gauss_legendre_pm1(m)
    return 0.5 * (x + 1.0), 0.5 * w


def sample(f, x):
    """Evaluate ``f`` on the nodes, raising on the first non-finite sample."""
    with np.errstate(all="ignore"):
        y = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape)
    bad = ~np.isfinite(y)
    if bad.any():
        x0 = float(x[np.argmax(bad)])
        raise QuadratureError(f"integrand is not finite at x = {x0!r}", x=x0)
    return y


def adaptive(rule, start=START_NODES, cap=MAX_NODES, tol=AGREEMENT_TOL):
    """Double the node count until two successive results agree.

    ``rule(nodes, weights)`` returns an array of integrals.  Agreement is in
    max norm; at ``cap`` nodes the last result is returned with a warning.
    """
    m = start
    prev = rule(*gauss_legendre(m))
    while m < cap:
        m *= 2
        cur = rule(*gauss_legendre(m))
        if np.max(np.abs(cur - prev), initial=0.0) < tol:
            return cur
        prev = cur
    warnings.warn(
        f"quadrature did not settle to {tol:g} within {cap} nodes", QuadratureWarning, stacklevel=2
    )
    return prev


def nodes_for_degree(deg):
    """Smallest Gauss rule integrating degree ``deg`` polynomials exactly."""
    return max(1, math.ceil((deg + 1) / 2))
