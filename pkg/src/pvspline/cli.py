"""Command line entry point.

Exit status is 0 on success, 2 for usage errors (bad flags, points out of
range, malformed input files) and 1 when a computation fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys

import numpy as np

from . import bench
from .bounds import bound_thm2, real_bound
from .densities import CORPUS, get_density
from .errors import (
    BranchError,
    ConvergenceError,
    DomainError,
    InvalidGridError,
    UnsupportedClassError,
)
from .grid import load_nodes, make_uniform, mesh_ratio
from .kernel_complex import weights_complex
from .kernel_real import weights_real
from .oracle import OracleConfig, offcut_oracle, pv_oracle
from .quadrature import eval_offcut, eval_singular
from .spline import FunctionClassSpec

TOL_ENV = "PVSPLINE_TOL"


class UsageError(Exception):
    pass


_COMPLEX_RE = re.compile(r"^\s*([+-]?[^,]+?)\s*,\s*([+-]?[^,]+?)\s*$")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``bi``, ``a`` or ``a,b``."""
    m = _COMPLEX_RE.match(text)
    try:
        if m:
            return complex(float(m.group(1)), float(m.group(2)))
        s = text.strip().replace(" ", "")
        if s.endswith("i"):
            s = s[:-1] + "j"
            # bare "i", "+i", "-i", "2+i" need an explicit unit coefficient
            if s[-2:-1] in ("", "+", "-"):
                s = s[:-1] + "1j"
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex literal {text!r}") from None


def format_complex(z: complex) -> str:
    sign = "-" if np.signbit(z.imag) else "+"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def _g17(v: float) -> str:
    # adding 0.0 turns -0.0 into 0.0
    return f"{v + 0.0:.17g}"


def _class_arg(text):
    try:
        return FunctionClassSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad N list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty N list")
    return values


def _add_grid_args(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="number of segments of a uniform grid")
    g.add_argument("--nodes", help="JSON file holding an array of grid nodes")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pvspline",
        description="Linear-spline quadrature for Cauchy singular integrals with Chebyshev weight.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    densities = sorted(CORPUS)

    p = sub.add_parser("weights", help="real weights A_k(x)")
    _add_grid_args(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("phi-weights", help="off-cut weights B_k(z)")
    _add_grid_args(p)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("eval", help="evaluate the real rule for a corpus density")
    _add_grid_args(p)
    p.add_argument("--density", choices=densities, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--class", dest="cls", type=_class_arg, help="override class, e.g. W2Piecewise:2.5")

    p = sub.add_parser("phi", help="evaluate the off-cut rule for a corpus density")
    _add_grid_args(p)
    p.add_argument("--density", choices=densities, required=True)
    p.add_argument("--z", type=parse_complex, required=True)
    p.add_argument("--class", dest="cls", type=_class_arg)

    p = sub.add_parser("oracle", help="reference value by adaptive integration")
    p.add_argument("--density", choices=densities, required=True)
    point = p.add_mutually_exclusive_group(required=True)
    point.add_argument("--x", type=float)
    point.add_argument("--z", type=parse_complex)
    p.add_argument("--tol", type=float, help=f"absolute tolerance (default ${TOL_ENV} or 1e-10)")

    p = sub.add_parser("converge", help="convergence study against the a priori bounds")
    p.add_argument("--density", choices=densities, required=True)
    p.add_argument("--mode", choices=("real", "complex"), default="real")
    p.add_argument("--n-list", type=_n_list, default=[8, 16, 32, 64, 128, 256, 512])
    p.add_argument("--out", help="write the report here instead of standard output")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--class", dest="cls", type=_class_arg)
    p.add_argument("--tol", type=float, help="oracle tolerance (default: derived from the bound)")
    return parser


def _grid(args):
    if args.nodes is not None:
        return load_nodes(args.nodes)
    return make_uniform(args.n)


def _oracle_config(tol, env_default=True):
    try:
        if tol is not None:
            return OracleConfig(tolerance=tol)
        if env_default or TOL_ENV in os.environ:
            return OracleConfig.from_env(TOL_ENV)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return None


def _cmd_weights(args, out):
    grid = _grid(args)
    if not -1.0 <= args.x <= 1.0:
        raise UsageError(f"--x must lie in [-1, 1], got {args.x!r}")
    A = weights_real(grid, args.x).weights
    if args.format == "csv":
        out.write(",".join(_g17(a) for a in A) + "\n")
    else:
        out.write(json.dumps([a + 0.0 for a in A.tolist()]) + "\n")


def _cmd_phi_weights(args, out):
    grid = _grid(args)
    B = weights_complex(grid, args.z).weights
    out.write(json.dumps([{"re": b.real + 0.0, "im": b.imag + 0.0} for b in B.tolist()]) + "\n")


def _bound_line(budget):
    return f"bound_{budget.kind} {budget.bound_value!r} (beta={budget.beta:g}, N={budget.N:g}, gamma={budget.gamma:g})"


def _cmd_eval(args, out):
    grid = _grid(args)
    if not -1.0 <= args.x <= 1.0:
        raise UsageError(f"--x must lie in [-1, 1], got {args.x!r}")
    density = get_density(args.density, args.cls)
    out.write(f"{eval_singular(grid, density, args.x)!r}\n")
    if density.cls is not None and grid.size >= 3:
        out.write(_bound_line(real_bound(density.cls, mesh_ratio(grid), grid.size)) + "\n")


def _cmd_phi(args, out):
    grid = _grid(args)
    density = get_density(args.density, args.cls)
    out.write(format_complex(eval_offcut(grid, density, args.z)) + "\n")
    if density.cls is not None and grid.size >= 3:
        try:
            out.write(_bound_line(bound_thm2(density.cls, mesh_ratio(grid), grid.size)) + "\n")
        except UnsupportedClassError:
            pass


def _cmd_oracle(args, out):
    density = get_density(args.density)
    config = _oracle_config(args.tol)
    if args.x is not None:
        if not -1.0 < args.x < 1.0:
            raise UsageError(f"--x must lie in (-1, 1), got {args.x!r}")
        res = pv_oracle(density, args.x, config, full_output=True)
        out.write(f"{res.value!r}\n")
    else:
        res = offcut_oracle(density, args.z, config, full_output=True)
        out.write(format_complex(res.value) + "\n")
    out.write(f"error_estimate {res.error!r}\n")


def _cmd_converge(args, out):
    density = get_density(args.density, args.cls)
    config = _oracle_config(args.tol, env_default=False)
    try:
        report = bench.run_convergence(density, args.mode, args.n_list, oracle_config=config)
    except (ValueError, UnsupportedClassError) as exc:
        if isinstance(exc, (InvalidGridError, DomainError)):
            raise
        raise UsageError(str(exc)) from exc
    if args.out:
        bench.write_report(report, args.format, args.out)
        out.write(f"wrote {args.out}\n")
    elif args.format == "json":
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        out.write("N,max_error,bound,ratio\n")
        for r in report.rows:
            out.write(f"{r.N},{_g17(r.max_error)},{_g17(r.bound)},{_g17(r.ratio)}\n")
    if report.fitted_order is not None:
        sys.stderr.write(f"fitted order {report.fitted_order:.4f}\n")
    for w in report.warnings:
        sys.stderr.write(f"warning: {w}\n")


_COMMANDS = {
    "weights": _cmd_weights,
    "phi-weights": _cmd_phi_weights,
    "eval": _cmd_eval,
    "phi": _cmd_phi,
    "oracle": _cmd_oracle,
    "converge": _cmd_converge,
}


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        _COMMANDS[args.command](args, out)
    except (UsageError, DomainError, BranchError, InvalidGridError, UnsupportedClassError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"pvspline: error: {exc}\n")
        return 2
    except (ConvergenceError, ArithmeticError, OSError, ValueError) as exc:
        sys.stderr.write(f"pvspline: computation failed: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run_cli())
