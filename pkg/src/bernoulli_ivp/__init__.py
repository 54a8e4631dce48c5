"""Spectral solution of linear second-order IVPs with orthonormal Bernoulli polynomials."""

from .basis import (
    OrthonormalBasis,
    SqrtScaled,
    bernoulli_numbers,
    bernoulli_polynomial,
    eval_basis,
    gram_schmidt_basis,
)
from .errors import (
    BernoulliIVPError,
    ConfigError,
    NumericalError,
    QuadratureError,
    SingularSystemError,
    StepUnderflowError,
)
from .expr import Closure, Constant, Polynomial, eval_expr, parse
from .opmatrix import OpMatrix, build_product_matrix, build_theta, verify_theta_identity
from .oracle import OracleSolution, error_report, eval_exact, rk_solve
from .poly import RationalPoly
from .projection import CoeffVector, coeffs_to_power_basis, project, reconstruct
from .solver import (
    IVProblem,
    SpectralSolution,
    convergence_study,
    normalize_domain,
    residual_norm,
    solve,
    solve_constant,
    solve_variable,
)

__version__ = "0.1.0"
