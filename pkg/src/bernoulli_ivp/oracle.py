"""Reference solutions: adaptive Dormand-Prince integration and closed forms.

The oracle never touches the spectral machinery.  The IVP becomes the
first-order system ``u = (y, y')`` and goes to scipy's RK45 (Dormand-Prince
5(4)) one grid interval at a time, so every grid abscissa is an accepted
step endpoint.  Between grid points the solution is a cubic Hermite
interpolant built from ``y`` and ``y'``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicHermiteSpline

from .errors import NumericalError, QuadratureError, StepUnderflowError
from .expr import as_integrable

__all__ = ["OracleSolution", "ErrorReport", "rk_solve", "eval_exact", "error_report"]

DEFAULT_TOL = 1e-10
TOL_RANGE = (1e-13, 1e-3)


@dataclass(frozen=True, eq=False)
class OracleSolution:
    x: np.ndarray
    y: np.ndarray
    dy: np.ndarray
    method: str
    tol: float

    def __post_init__(self):
        if np.any(np.diff(self.x) <= 0):
            raise ValueError("oracle grid must be strictly increasing")
        if not (np.all(np.isfinite(self.y)) and np.all(np.isfinite(self.dy))):
            raise NumericalError("oracle produced non-finite samples")
        object.__setattr__(self, "_spline", CubicHermiteSpline(self.x, self.y, self.dy, extrapolate=False))

    @property
    def domain(self):
        return float(self.x[0]), float(self.x[-1])

    def __call__(self, x):
        return self._spline(np.asarray(x, dtype=float))


def rk_solve(problem, tol=DEFAULT_TOL, grid=201, method="RK45"):
    """Integrate ``problem`` on its own domain, sampling ``grid`` points.

    Raises
    ------
    StepUnderflowError
        When the integrator cannot advance; ``err.x`` is where it stalled.
    """
    lo, hi = TOL_RANGE
    if not lo <= tol <= hi:
        raise ValueError(f"tol must lie in [{lo:g}, {hi:g}], got {tol!r}")
    if grid < 2:
        raise ValueError("grid needs at least two points")
    P, Q, r = problem.P, problem.Q, problem.r

    def rhs(x, u):
        return [u[1], r(x) - P(x) * u[1] - Q(x) * u[0]]

    xs = np.linspace(*problem.domain, grid)
    ys = np.empty(grid)
    dys = np.empty(grid)
    u = np.array([problem.alpha, problem.beta])
    ys[0], dys[0] = u
    with np.errstate(all="ignore"):
        for k in range(grid - 1):
            res = solve_ivp(rhs, (xs[k], xs[k + 1]), u, method=method, rtol=tol, atol=tol)
            if res.status != 0 or not np.all(np.isfinite(res.y)):
                where = float(res.t[-1]) if res.t.size else float(xs[k])
                raise StepUnderflowError(
                    f"integration failed near x = {where!r}: {res.message}", x=where
                )
            u = res.y[:, -1]
            ys[k + 1], dys[k + 1] = u
    return OracleSolution(xs, ys, dys, f"{method} (Dormand-Prince 5(4)), cubic Hermite dense output", tol)


def eval_exact(e, grid):
    """Sample a closed-form solution (expression, string or callable) on ``grid``."""
    f = as_integrable(e)
    x = np.asarray(grid, dtype=float)
    with np.errstate(all="ignore"):
        y = np.broadcast_to(np.asarray(f(x), dtype=float), x.shape).copy()
    bad = ~np.isfinite(y)
    if bad.any():
        x0 = float(x[np.argmax(bad)])
        raise QuadratureError(f"exact solution is not finite at x = {x0!r}", x=x0)
    return y


@dataclass(frozen=True, eq=False)
class ErrorReport:
    x: np.ndarray
    abs_error: np.ndarray
    linf: float
    l2: float


def _grid_of(obj):
    return obj.x if isinstance(obj, OracleSolution) else None


def error_report(a, b, grid=None):
    """Compare two solutions (spectral, oracle or any callable) pointwise.

    The grid comes from whichever argument is an :class:`OracleSolution`.
    Two oracles must share a grid.  Otherwise ``grid`` is used, defaulting to
    201 points on the domain of ``a``.  ``l2`` is the trapezoidal L2 norm of
    the difference.
    """
    ga, gb = _grid_of(a), _grid_of(b)
    if ga is not None and gb is not None and not np.array_equal(ga, gb):
        raise ValueError("grid mismatch between the two oracle solutions")
    x = ga if ga is not None else gb
    if x is None:
        if grid is None:
            dom = getattr(a, "domain", None) or getattr(b, "domain", None) or (0.0, 1.0)
            grid = np.linspace(*dom, 201)
        x = np.asarray(grid, dtype=float)
    elif grid is not None and not np.array_equal(np.asarray(grid, dtype=float), x):
        raise ValueError("grid mismatch with oracle sample grid")

    def values(obj):
        if isinstance(obj, OracleSolution):
            return obj.y
        return np.asarray(obj(x), dtype=float)

    err = np.abs(values(a) - values(b))
    l2 = float(np.sqrt(np.trapezoid(err**2, x))) if len(x) > 1 else 0.0
    return ErrorReport(x, err, float(np.max(err)), l2)
