"""Command-line interface: ``bernoulli-ivp <subcommand> ...``.

Exit status 0 on success, 1 on configuration or I/O errors, 2 on
numerical failure (singular system, quadrature or integrator breakdown).
"""

import argparse
import csv
import io
import sys
from pathlib import Path

import numpy as np

from .basis import DEFAULT_MAX_ORDER, gram_schmidt_basis
from .config import load_config
from .errors import ConfigError, NumericalError
from .expr import as_integrable, parse
from .opmatrix import PRODUCT_MODES, build_theta
from .oracle import DEFAULT_TOL, error_report, eval_exact, rk_solve
from .projection import coeffs_to_power_basis, project
from .solver import INTEGRATION_MODES, convergence_study, solve

GRID = 201


def _fmt(v):
    return repr(float(v))


def _write_csv(path, header, columns):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([_fmt(v) for v in row])
    if path is None or str(path) == "-":
        sys.stdout.write(buf.getvalue())
        return
    try:
        Path(path).write_text(buf.getvalue(), encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"cannot write {str(path)!r}: {err.strerror}") from None


def display_vector(values, decimals=5):
    return "(" + ", ".join(f"{v:.{decimals}f}" for v in values) + ")"


def display_poly(coeffs, var="x", decimals=5):
    """Power-basis coefficients as ``-0.00009 x + 0.25057 x^2 ...``."""
    terms = []
    for k, c in enumerate(coeffs):
        if round(c, decimals) == 0:
            continue
        mag = f"{abs(c):.{decimals}f}"
        mono = "" if k == 0 else (f" {var}" if k == 1 else f" {var}^{k}")
        terms.append(("-" if c < 0 else "+", mag + mono))
    if not terms:
        return f"{0:.{decimals}f}"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    return out + "".join(f" {s} {b}" for s, b in terms[1:])


def emit_plot_data(sol, path, exact=None, oracle=None, grid=GRID):
    """Write the data behind a solution-vs-reference plot.

    Columns ``x, y_approx, [y_exact], [y_oracle], [abs_error], residual``.
    ``abs_error`` is taken against the exact solution if given, else the
    oracle.  Returns the matching :class:`~bernoulli_ivp.oracle.ErrorReport`
    (or ``None`` without a reference).
    """
    problem = sol.problem
    x = oracle.x if oracle is not None else np.linspace(*problem.domain, grid)
    y = sol.y(x)
    with np.errstate(all="ignore"):
        residual = np.abs(sol.ddy(x) + problem.P(x) * sol.dy(x) + problem.Q(x) * y - problem.r(x))
    header, cols = ["x", "y_approx"], [x, y]
    ref = None
    if exact is not None:
        header.append("y_exact")
        cols.append(eval_exact(exact, x))
        ref = exact
    if oracle is not None:
        header.append("y_oracle")
        cols.append(oracle.y)
        if ref is None:
            ref = oracle
    report = None
    if ref is not None:
        report = error_report(sol, ref, grid=x)
        header.append("abs_error")
        cols.append(report.abs_error)
    header.append("residual")
    cols.append(residual)
    _write_csv(path, header, cols)
    return report


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args):
    cfg = load_config(args.config, args.max_order)
    problem = cfg.problem
    sol = solve(problem, n=args.n, product_mode=args.product_mode, integration=args.integration,
                max_order=args.max_order)
    oracle = None if args.no_oracle else rk_solve(problem, args.oracle_tol, args.grid)
    print(f"problem: {sol.problem.summary()}")
    print(f"n = {sol.n}, product mode = {sol.product_mode}, integration = {sol.integration}")
    print(f"condition number = {sol.condition_number:.6g}")
    print(f"residual (max) = {sol.residual_linf:.6g}")
    print(f"C (y'' coefficients) = {display_vector(sol.coeffs.values)}")
    print(f"C full precision = [{', '.join(_fmt(v) for v in sol.coeffs.values)}]")
    print(f"y(x) ~ {display_poly(sol.y_poly.coef)}")
    print(f"y power coefficients = [{', '.join(_fmt(v) for v in sol.y_poly.coef)}]")
    if cfg.exact is not None:
        rep = error_report(sol, cfg.exact, grid=np.linspace(*problem.domain, args.grid))
        print(f"error vs exact: Linf = {rep.linf:.6g}, L2 = {rep.l2:.6g}")
    if oracle is not None:
        rep = error_report(sol, oracle)
        print(f"error vs oracle (tol {args.oracle_tol:g}): Linf = {rep.linf:.6g}, L2 = {rep.l2:.6g}")
    if args.out:
        emit_plot_data(sol, args.out, exact=cfg.exact, oracle=oracle, grid=args.grid)
        print(f"wrote {args.out}")
    return 0


def cmd_approx(args):
    try:
        f = as_integrable(parse(args.f))
    except ConfigError as err:
        raise ConfigError(f"--f: {err}") from None
    basis = gram_schmidt_basis(args.n, max_order=args.max_order)
    c = project(f, basis)
    print(f"c = [{', '.join(_fmt(v) for v in c.values)}]")
    print(f"f_hat(x) ~ {display_poly(coeffs_to_power_basis(c))}")
    x = np.linspace(0.0, 1.0, args.grid)
    fx = eval_exact(f, x)
    fh = c(x)
    err = np.abs(fx - fh)
    print(f"max abs error on grid = {err.max():.6g}")
    if args.out:
        _write_csv(args.out, ["x", "f", "f_hat", "error"], [x, fx, fh, err])
        print(f"wrote {args.out}")
    return 0


def cmd_basis(args):
    basis = gram_schmidt_basis(args.n, max_order=args.max_order)
    for k, m in enumerate(basis.members):
        radicand, ints = m.primitive()
        rad = str(radicand.numerator) if radicand.denominator == 1 else str(radicand)
        print(f"phi_{k} = sqrt({rad}) * [{', '.join(str(i) for i in ints)}]")
    print()
    print("float coefficients (ascending powers):")
    for k in range(basis.n + 1):
        print(f"phi_{k}: " + ", ".join(f"{v:.10g}" for v in basis.power_coeffs[k, : k + 1]))
    return 0


def cmd_opmat(args):
    theta = build_theta(args.n)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in theta.entries:
        w.writerow([_fmt(v) for v in row])
    if args.out:
        try:
            Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
        except OSError as err:
            raise ConfigError(f"cannot write {args.out!r}: {err.strerror}") from None
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_oracle(args):
    cfg = load_config(args.config, args.max_order)
    sol = rk_solve(cfg.problem, args.tol, args.grid)
    header, cols = ["x", "y", "dy"], [sol.x, sol.y, sol.dy]
    if cfg.exact is not None:
        ex = eval_exact(cfg.exact, sol.x)
        header += ["y_exact", "abs_error"]
        cols += [ex, np.abs(ex - sol.y)]
        print(f"oracle vs exact: Linf = {np.max(np.abs(ex - sol.y)):.6g}", file=sys.stderr)
    _write_csv(args.out, header, cols)
    return 0


def cmd_study(args):
    cfg = load_config(args.config, args.max_order)
    try:
        ns = [int(v) for v in args.ns.split(",")]
    except ValueError:
        raise ConfigError(f"--ns: expected comma-separated integers, got {args.ns!r}") from None
    ref, label = None, None
    if args.reference in ("auto", "exact") and cfg.exact is not None:
        ref, label = cfg.exact, "exact"
    elif args.reference in ("auto", "oracle"):
        ref, label = rk_solve(cfg.problem, args.oracle_tol, args.grid), "oracle"
    elif args.reference == "exact":
        raise ConfigError("--reference exact requested but the config has no 'exact' key")
    rows = convergence_study(cfg.problem, ns, reference=ref, grid=args.grid,
                             product_mode=args.product_mode, integration=args.integration,
                             max_order=args.max_order)
    header = ["n", "residual_linf"] + ([f"err_vs_{label}_linf"] if ref is not None else [])
    cols = [[r.n for r in rows], [r.residual_linf for r in rows]]
    if ref is not None:
        cols.append([r.error_linf for r in rows])
    print("  ".join(f"{h:>22}" for h in header))
    for row in zip(*cols):
        print(f"{row[0]:>22d}  " + "  ".join(f"{v:>22.6e}" for v in row[1:]))
    if args.out:
        _write_csv(args.out, header, cols)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bernoulli-ivp",
        description="Operational-matrix solver for linear second-order IVPs "
        "in an orthonormal Bernoulli-derived basis.",
    )
    parser.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER,
                        help="largest truncation order accepted (default %(default)s)")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_opts(p):
        p.add_argument("--product-mode", choices=PRODUCT_MODES, default="paper")
        p.add_argument("--integration", choices=INTEGRATION_MODES, default="exact",
                       help="'exact' integrates y'' without truncation; 'truncated' uses C^T Theta^2 phi")
        p.add_argument("--grid", type=int, default=GRID)
        p.add_argument("--oracle-tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("solve", help="solve the IVP described by a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--out", help="CSV of x, y_approx, references, abs_error, residual")
    p.add_argument("--no-oracle", action="store_true", help="skip the Runge-Kutta reference")
    solver_opts(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("approx", help="project a function onto the basis")
    p.add_argument("--f", required=True, help="expression in x")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", type=int, default=GRID)
    p.add_argument("--out")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("basis", help="print the orthonormal basis in closed form")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("opmat", help="print the integration operational matrix as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_opmat)

    p = sub.add_parser("oracle", help="Runge-Kutta reference solution as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--grid", type=int, default=GRID)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("study", help="convergence study over several orders")
    p.add_argument("--config", required=True)
    p.add_argument("--ns", required=True, help="ascending comma-separated orders, e.g. 4,6,8")
    p.add_argument("--reference", choices=("auto", "exact", "oracle", "none"), default="auto")
    p.add_argument("--out")
    solver_opts(p)
    p.set_defaults(func=cmd_study)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except NumericalError as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
