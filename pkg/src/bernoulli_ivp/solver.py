"""Operational-matrix solver for linear second-order initial value problems.

Solves ``y'' + P(x) y' + Q(x) y = r(x)`` with ``y(a) = alpha`` and
``y'(a) = beta`` on ``[a, b]``.  The interval is mapped onto ``[0, 1]``.
The second derivative is expanded as ``y'' = C^T phi`` and the equation
becomes the dense system

    (I + Theta A + Theta^2 B)^T C = R~,

where ``A`` and ``B`` are the product matrices of ``P`` and ``Q``
(``p*I`` and ``q*I`` for constants).  ``R~`` is the projection of
``r - P*beta - Q*(alpha + beta*t)``.  Putting the initial conditions on the
right-hand side lets them be nonzero.
"""

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np
from numpy.polynomial import Polynomial as FloatPoly
from scipy.linalg import lu_factor, lu_solve

from .basis import DEFAULT_MAX_ORDER, gram_schmidt_basis
from .errors import SingularSystemError
from .expr import Closure, Constant, Polynomial, as_integrable
from .opmatrix import build_product_matrix, build_theta
from .projection import CoeffVector, coeffs_to_power_basis, project

__all__ = [
    "IVProblem",
    "DomainMap",
    "SpectralSolution",
    "StudyRow",
    "normalize_domain",
    "solve",
    "solve_constant",
    "solve_variable",
    "residual_norm",
    "convergence_study",
    "COND_LIMIT",
]

COND_LIMIT = 1e14
DEFAULT_GRID = 201
INTEGRATION_MODES = ("exact", "truncated")


@dataclass(frozen=True)
class IVProblem:
    """Problem statement; ``P``, ``Q``, ``r`` accept anything :func:`as_integrable` does."""

    P: object
    Q: object
    r: object
    alpha: float = 0.0
    beta: float = 0.0
    domain: tuple = (0.0, 1.0)
    n: int = 6

    def __post_init__(self):
        for name in ("P", "Q", "r"):
            object.__setattr__(self, name, as_integrable(getattr(self, name)))
        a, b = (float(v) for v in self.domain)
        if not (math.isfinite(a) and math.isfinite(b) and a < b):
            raise ValueError(f"domain must satisfy a < b, got {self.domain!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"truncation order must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "domain", (a, b))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def has_constant_coefficients(self):
        return self.P.is_constant and self.Q.is_constant

    def summary(self):
        a, b = self.domain
        return (
            f"y'' + ({self.P.label}) y' + ({self.Q.label}) y = {self.r.label}, "
            f"y({a:g}) = {self.alpha:g}, y'({a:g}) = {self.beta:g}, x in [{a:g}, {b:g}], n = {self.n}"
        )


@dataclass(frozen=True)
class DomainMap:
    """Affine map ``x = a + h t`` between ``[a, b]`` and ``[0, 1]``."""

    a: float
    h: float

    @property
    def is_identity(self):
        return self.a == 0.0 and self.h == 1.0

    def to_unit(self, x):
        return (np.asarray(x, dtype=float) - self.a) / self.h

    def from_unit(self, t):
        return self.a + self.h * np.asarray(t, dtype=float)

    def poly_to_x(self, p):
        """Rewrite a power-basis polynomial in ``t`` as one in ``x``."""
        if self.is_identity:
            return p
        return p(FloatPoly([-self.a / self.h, 1.0 / self.h]))


def _rescale(f, dmap, factor):
    """``t -> factor * f(a + h t)``."""
    if dmap.is_identity and factor == 1.0:
        return f
    if isinstance(f, Constant):
        return Constant(factor * f.value)
    if isinstance(f, Polynomial):
        g = Polynomial(f.poly.compose_linear(Fraction(dmap.a), Fraction(dmap.h)) * Fraction(factor))
        return g
    a, h = dmap.a, dmap.h
    return Closure(lambda t: factor * f(a + h * t), label=f"{factor:g}*({f.label})(x mapped)")


def normalize_domain(problem):
    """Map ``problem`` onto ``[0, 1]``; returns ``(unit_problem, DomainMap)``."""
    a, b = problem.domain
    dmap = DomainMap(a, b - a)
    h = dmap.h
    unit = IVProblem(
        P=_rescale(problem.P, dmap, h),
        Q=_rescale(problem.Q, dmap, h * h),
        r=_rescale(problem.r, dmap, h * h),
        alpha=problem.alpha,
        beta=h * problem.beta,
        domain=(0.0, 1.0),
        n=problem.n,
    )
    return unit, dmap


@dataclass(frozen=True, eq=False)
class SpectralSolution:
    """Result of a spectral solve.

    ``coeffs`` expands ``y''`` on the unit interval.  ``dy_coeffs`` and
    ``y_coeffs`` expand the particular parts of ``y'`` and ``y`` (without the
    initial-condition terms), possibly in a larger basis.  ``y_poly``,
    ``dy_poly`` and ``ddy_poly`` are power-basis polynomials in the original
    variable ``x``.
    """

    coeffs: CoeffVector
    dy_coeffs: CoeffVector
    y_coeffs: CoeffVector
    alpha: float
    beta: float
    dmap: DomainMap
    problem: IVProblem
    product_mode: str
    integration: str
    condition_number: float
    y_poly: FloatPoly = field(repr=False)
    dy_poly: FloatPoly = field(repr=False)
    ddy_poly: FloatPoly = field(repr=False)
    residual_linf: float = float("nan")

    @property
    def n(self):
        return self.coeffs.n

    @property
    def domain(self):
        return self.problem.domain

    def y(self, x):
        t = self.dmap.to_unit(x)
        return self.alpha + self.beta * self.dmap.h * t + self.y_coeffs(t)

    def dy(self, x):
        t = self.dmap.to_unit(x)
        return (self.beta * self.dmap.h + self.dy_coeffs(t)) / self.dmap.h

    def ddy(self, x):
        t = self.dmap.to_unit(x)
        return self.coeffs(t) / self.dmap.h**2

    __call__ = y


def _check_mode(integration):
    if integration not in INTEGRATION_MODES:
        raise ValueError(f"unknown integration mode {integration!r}; expected one of {INTEGRATION_MODES}")


def _assemble_and_solve(unit, basis, theta, a_vec, A, B):
    n = basis.n
    I = np.eye(n + 1)
    T = theta.entries
    M = I + T @ A + T @ T @ B
    # known initial-condition terms move to the right-hand side
    v = np.zeros(n + 1)
    v[0] = unit.alpha + unit.beta / 2
    v[1] = unit.beta / (2 * math.sqrt(3))
    rhs = project(unit.r, basis).values - unit.beta * a_vec - B.T @ v
    cond = float(np.linalg.cond(M))
    if not math.isfinite(cond) or cond > COND_LIMIT:
        raise SingularSystemError(
            f"system matrix is singular or ill-conditioned (condition number {cond:.3g}); "
            "try a different truncation order"
        )
    C = lu_solve(lu_factor(M), rhs, trans=1)
    return C, cond


def _finish(problem, unit, dmap, basis, theta, C, cond, product_mode, integration, max_order):
    n = basis.n
    if integration == "exact":
        big = gram_schmidt_basis(n + 2, max_order=max(max_order, n + 2))
        Tb = build_theta(n + 2).entries
        Cb = np.concatenate([C, [0.0, 0.0]])
        ybasis = big
        dy_vals = Tb.T @ Cb
        y_vals = Tb.T @ dy_vals
    else:
        T = theta.entries
        ybasis = basis
        dy_vals = T.T @ C
        y_vals = T.T @ dy_vals
    coeffs = CoeffVector(C, basis)
    dy_c = CoeffVector(dy_vals, ybasis)
    y_c = CoeffVector(y_vals, ybasis)

    h = dmap.h
    ic_y = FloatPoly([unit.alpha, unit.beta])
    y_t = FloatPoly(coeffs_to_power_basis(y_c)) + ic_y if y_c.values.any() else ic_y
    dy_t = FloatPoly(coeffs_to_power_basis(dy_c)) + unit.beta if dy_c.values.any() else FloatPoly([unit.beta])
    ddy_t = FloatPoly(coeffs_to_power_basis(coeffs)) if C.any() else FloatPoly([0.0])
    sol = SpectralSolution(
        coeffs=coeffs,
        dy_coeffs=dy_c,
        y_coeffs=y_c,
        alpha=problem.alpha,
        beta=problem.beta,
        dmap=dmap,
        problem=problem,
        product_mode=product_mode,
        integration=integration,
        condition_number=cond,
        y_poly=dmap.poly_to_x(y_t),
        dy_poly=dmap.poly_to_x(dy_t / h),
        ddy_poly=dmap.poly_to_x(ddy_t / (h * h)),
    )
    return replace(sol, residual_linf=residual_norm(sol, problem))


def _prepare(problem, n, max_order):
    if n is not None:
        problem = replace(problem, n=n)
    unit, dmap = normalize_domain(problem)
    basis = gram_schmidt_basis(problem.n, max_order=max_order)
    return problem, unit, dmap, basis, build_theta(problem.n)


def solve_constant(problem, n=None, integration="exact", max_order=DEFAULT_MAX_ORDER):
    """Constant-coefficient case: ``(I + p Theta + q Theta^2)^T C = R~``."""
    _check_mode(integration)
    if not problem.has_constant_coefficients:
        raise ValueError("solve_constant needs constant P and Q; use solve_variable")
    problem, unit, dmap, basis, theta = _prepare(problem, n, max_order)
    p, q = unit.P.value, unit.Q.value
    size = basis.n + 1
    a_vec = np.zeros(size)
    a_vec[0] = p
    C, cond = _assemble_and_solve(unit, basis, theta, a_vec, p * np.eye(size), q * np.eye(size))
    return _finish(problem, unit, dmap, basis, theta, C, cond, "constant", integration, max_order)


def solve_variable(problem, n=None, product_mode="paper", integration="exact", max_order=DEFAULT_MAX_ORDER):
    """Variable-coefficient case using product matrices ``A`` (for P) and ``B`` (for Q).

    Raises
    ------
    SingularSystemError
        If the condition number of the system exceeds ``COND_LIMIT``.
    QuadratureError
        If a coefficient function is not finite at a quadrature node.
    """
    _check_mode(integration)
    problem, unit, dmap, basis, theta = _prepare(problem, n, max_order)
    A = build_product_matrix(basis, unit.P, product_mode).entries
    B = build_product_matrix(basis, unit.Q, product_mode).entries
    a_vec = project(unit.P, basis).values
    C, cond = _assemble_and_solve(unit, basis, theta, a_vec, A, B)
    return _finish(problem, unit, dmap, basis, theta, C, cond, product_mode, integration, max_order)


def solve(problem, n=None, product_mode="paper", integration="exact", max_order=DEFAULT_MAX_ORDER):
    """Dispatch to :func:`solve_constant` or :func:`solve_variable`."""
    if problem.has_constant_coefficients:
        return solve_constant(problem, n=n, integration=integration, max_order=max_order)
    return solve_variable(problem, n=n, product_mode=product_mode, integration=integration, max_order=max_order)


def residual_norm(sol, problem=None, grid=DEFAULT_GRID):
    """Max of ``|y'' + P y' + Q y - r|`` over ``grid`` equispaced points."""
    if grid < 2:
        raise ValueError("grid needs at least two points")
    problem = problem or sol.problem
    x = np.linspace(*problem.domain, grid)
    with np.errstate(all="ignore"):
        res = sol.ddy(x) + problem.P(x) * sol.dy(x) + problem.Q(x) * sol.y(x) - problem.r(x)
    return float(np.max(np.abs(res)))


@dataclass(frozen=True)
class StudyRow:
    n: int
    residual_linf: float
    error_linf: float = None


def convergence_study(problem, n_list, reference=None, grid=DEFAULT_GRID, **solve_kw):
    """Solve at each order in ``n_list``; error columns need ``reference``.

    ``reference`` is any callable ``x -> y`` (an exact solution or an
    :class:`~bernoulli_ivp.oracle.OracleSolution`).
    """
    n_list = list(n_list)
    if not n_list:
        raise ValueError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("n_list must be strictly ascending")
    x = np.linspace(*problem.domain, grid)
    ref = None if reference is None else np.asarray(reference(x), dtype=float)
    rows = []
    for n in n_list:
        sol = solve(problem, n=n, **solve_kw)
        err = None if ref is None else float(np.max(np.abs(sol.y(x) - ref)))
        rows.append(StudyRow(n, residual_norm(sol, problem, grid), err))
    return rows
