"""Command-line front end.

Every subcommand prints CSV (or key=value lines for scalar results) to stdout
with fixed formatting, so identical invocations produce byte-identical
output.  Exit codes: 0 on success, 1 when a gated check fails (`table`), 2 on
bad arguments or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import harness
from .dcc import dcc_row, kernel_triangle, verify_matrix_identity
from .gronwall import GronwallInput, equality_sequence, gronwall_bound
from .kernels import Scheme, kernel_row
from .meshes import Mesh, custom_mesh, graded_mesh, mesh_stats, sin_mesh, uniform_mesh
from .analysis import doubling_scan
from .quadform import build_m, det_identity_check, positivity_iff_monotone
from .solver import OdeProblem, PdeProblem, solve_ode, solve_pde
from .special import MittagLefflerParams, gamma, mittag_leffler, omega

__all__ = ["main"]


def _add_mesh_flags(p: argparse.ArgumentParser):
    p.add_argument("--kind", choices=("graded", "uniform", "sin", "file"), default="graded")
    p.add_argument("--T", type=float, default=1.0, help="horizon (graded/uniform)")
    p.add_argument("--N", type=int, default=64, help="number of steps")
    p.add_argument("--r", type=float, default=1.0, help="grading exponent (graded)")
    p.add_argument("--nodes-file", help="node list, one value per line (kind=file)")


def _build_mesh(args) -> Mesh:
    if args.kind == "graded":
        return graded_mesh(args.T, args.N, args.r)
    if args.kind == "uniform":
        return uniform_mesh(args.T, args.N)
    if args.kind == "sin":
        return sin_mesh(args.N)
    if not args.nodes_file:
        raise ValueError("kind=file needs --nodes-file")
    return custom_mesh(np.loadtxt(args.nodes_file))


def _cmd_mesh(args) -> int:
    mesh = _build_mesh(args)
    print("k,t_k,tau_k")
    print(f"0,{mesh.nodes[0]:.12e},")
    for k in range(1, mesh.count + 1):
        print(f"{k},{mesh.nodes[k]:.12e},{mesh.steps[k - 1]:.12e}")
    stats = mesh_stats(mesh)
    print(f"# rho={stats.rho:.6e},tau_max={stats.tau_max:.6e}")
    return 0


def _cmd_special(args) -> int:
    if args.fn == "gamma":
        val = gamma(args.x)
    elif args.fn == "omega":
        val = omega(args.order, args.s)
    else:
        params = MittagLefflerParams(tol=args.tol, max_terms=args.max_terms)
        val = mittag_leffler(args.alpha, args.z, params)
    print(f"{val:.17g}")
    return 0


def _cmd_kernels(args) -> int:
    mesh = _build_mesh(args)
    scheme = Scheme(args.scheme, args.sigma if args.scheme == "l21sigma" else None)
    row = kernel_row(mesh, args.alpha, args.n, scheme)
    print("j,a_j")
    for j, a in enumerate(row.coeffs):
        print(f"{j},{a:.12e}")
    return 0


def _cmd_dcc(args) -> int:
    mesh = _build_mesh(args)
    rows = kernel_triangle(mesh, args.alpha, args.n)
    if args.emit == "residual":
        print(f"residual,{verify_matrix_identity(mesh, args.alpha, rows):.6e}")
        return 0
    dcc = dcc_row(mesh, args.alpha, rows)
    cols = {"p": dcc.p, "ptilde": dcc.p_tilde, "q": dcc.q}
    names = list(cols) if args.emit == "all" else [args.emit]
    print("j," + ",".join(names))
    for j in range(args.n):
        print(f"{j}," + ",".join(f"{cols[name][j]:.12e}" for name in names))
    return 0


def _parse_forcing(text: str, n: int) -> np.ndarray:
    kind, _, rest = text.partition(":")
    if kind == "const":
        return np.full(n, float(rest))
    if kind == "file":
        f = np.loadtxt(rest, dtype=float).reshape(-1)
        if f.size != n:
            raise ValueError(f"forcing file holds {f.size} values, mesh has {n} steps")
        return f
    raise ValueError(f"forcing must look like const:<v> or file:<path>, got {text!r}")


def _cmd_gronwall(args) -> int:
    mesh = graded_mesh(args.T, args.N, args.r)
    f = _parse_forcing(args.f, mesh.count)
    inp = GronwallInput(v0=args.v0, f=f, kappa=args.kappa, alpha=args.alpha,
                        mesh=mesh, node_choice=args.node_choice)
    v = equality_sequence(inp)
    print("n,V_n,bound_n,slack_n")
    for n in range(1, mesh.count + 1):
        bound = gronwall_bound(inp, n)
        print(f"{n},{v[n]:.12e},{bound:.12e},{bound - v[n]:.12e}")
    return 0


def _cmd_solve(args, problem_kind: str) -> int:
    mesh = graded_mesh(args.T, args.N, args.r)
    if problem_kind == "ode":
        traj = solve_ode(OdeProblem(args.alpha, args.beta, args.kappa, mesh))
        values = traj.values
    else:
        problem = PdeProblem(args.alpha, args.beta, args.kappa, mesh, args.M)
        traj = solve_pde(problem)
        values = np.sqrt(problem.h * np.sum(traj.values ** 2, axis=1))
    if args.emit == "errors":
        print("n,t_n,error")
        for n in range(mesh.count + 1):
            print(f"{n},{mesh.nodes[n]:.12e},{traj.errors[n]:.12e}")
    else:
        print("n,t_n,value,error")
        for n in range(mesh.count + 1):
            print(f"{n},{mesh.nodes[n]:.12e},{values[n]:.12e},{traj.errors[n]:.12e}")
    return 0


def _cmd_dcs(args) -> int:
    reports, bounded = doubling_scan(args.r, args.p, args.q, args.jmax)
    print("j,n,S,bound,ratio")
    for j, rep in enumerate(reports, start=1):
        print(f"{j},{rep.case.n},{rep.value:.6e},{rep.bound:.6e},{rep.ratio:.6e}")
    if not bounded:
        print("# warning: ratios still growing >2x across the last doublings", file=sys.stderr)
    return 0


def _cmd_quadform(args) -> int:
    if args.from_kernels:
        mesh = _build_mesh(args)
        d = kernel_row(mesh, args.alpha, args.n, Scheme("l1")).coeffs[::-1]
    elif args.d:
        d = np.array([float(v) for v in args.d.split(",")])
    else:
        raise ValueError("provide --d or --from-kernels")
    residual = det_identity_check(d)
    is_pd, is_mono = positivity_iff_monotone(d)
    gaps = np.diff(np.concatenate(([0.0], d)))
    print(f"det={np.linalg.det(build_m(d)):.12e}")
    print(f"product={np.prod(gaps):.12e}")
    print(f"residual={residual:.6e}")
    print(f"positive_definite={str(is_pd).lower()}")
    print(f"strictly_increasing={str(is_mono).lower()}")
    return 0


def _cmd_table(args) -> int:
    result = harness.run_table(args.which, gate=args.gate)
    if args.format == "json":
        sys.stdout.write(harness.report_json(result.report, result))
    else:
        sys.stdout.write(harness.report_csv(result.report))
        print(f"# theo={','.join(result.report.theo)}")
        print(f"# order_gaps={','.join(f'{g:.4f}' for g in result.order_gaps)}")
        print(f"# passed={str(result.passed).lower()}")
    return 0 if result.passed else 1


def _cmd_sweep(args) -> int:
    with open(args.config) as fh:
        config = harness.config_from_dict(json.load(fh))
    report = harness.run_sweep(config)
    if args.format == "json":
        sys.stdout.write(harness.report_json(report))
    else:
        sys.stdout.write(harness.report_csv(report))
        print(f"# theo={','.join(report.theo)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracstep",
        description="Nonuniform-mesh time stepping for Caputo problems, with "
                    "kernel audits and convergence studies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mesh", help="emit mesh nodes and steps")
    _add_mesh_flags(p)
    p.set_defaults(func=_cmd_mesh)

    p = sub.add_parser("special", help="evaluate a special function")
    inner = p.add_subparsers(dest="special_command", required=True)
    ev = inner.add_parser("eval")
    ev.add_argument("--fn", choices=("gamma", "omega", "ml"), required=True)
    ev.add_argument("--x", type=float, help="gamma argument")
    ev.add_argument("--order", type=float, help="omega order")
    ev.add_argument("--s", type=float, help="omega argument")
    ev.add_argument("--alpha", type=float, help="ml order")
    ev.add_argument("--z", type=float, help="ml argument")
    ev.add_argument("--tol", type=float, default=1e-14)
    ev.add_argument("--max-terms", type=int, default=400)
    ev.set_defaults(func=_cmd_special)

    p = sub.add_parser("kernels", help="emit one kernel row, age order")
    _add_mesh_flags(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--scheme", choices=("l1", "l21sigma"), default="l1")
    p.add_argument("--sigma", type=float, default=None)
    p.set_defaults(func=_cmd_kernels)

    p = sub.add_parser("dcc", help="complementary kernels and their surrogate")
    _add_mesh_flags(p)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--emit", choices=("all", "p", "ptilde", "q", "residual"), default="all")
    p.set_defaults(func=_cmd_dcc)

    p = sub.add_parser("gronwall", help="extremal sequence vs. its bound")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--v0", type=float, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--f", default="const:0", help="const:<v> or file:<path>")
    p.add_argument("--node-choice", choices=("t_n", "t_{n-1}"), default="t_n")
    p.set_defaults(func=_cmd_gronwall)

    for name, kind in (("solve-ode", "ode"), ("solve-pde", "pde")):
        p = sub.add_parser(name, help=f"march the {kind} test problem")
        p.add_argument("--alpha", type=float, required=True)
        p.add_argument("--beta", type=float, required=True)
        p.add_argument("--kappa", type=float, default=1.0)
        p.add_argument("--T", type=float, default=1.0)
        p.add_argument("--N", type=int, required=True)
        p.add_argument("--r", type=float, default=1.0)
        if kind == "pde":
            p.add_argument("--M", type=int, default=1024)
        p.add_argument("--emit", choices=("trajectory", "errors"), default="trajectory")
        p.set_defaults(func=lambda a, k=kind: _cmd_solve(a, k))

    p = sub.add_parser("dcs", help="convolution-summation doubling scan")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--jmax", type=int, default=16)
    p.set_defaults(func=_cmd_dcs)

    p = sub.add_parser("quadform", help="determinant identity and definiteness")
    _add_mesh_flags(p)
    p.add_argument("--d", help="comma-separated positive sequence")
    p.add_argument("--from-kernels", action="store_true")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--n", type=int, default=8)
    p.set_defaults(func=_cmd_quadform)

    p = sub.add_parser("table", help="replay a bundled convergence study")
    p.add_argument("--which", type=int, choices=(1, 2, 3, 4), required=True)
    p.add_argument("--gate", type=float, default=0.05)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("sweep", help="run a sweep described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OverflowError, ArithmeticError, OSError) as exc:
        print(f"fracstep: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
