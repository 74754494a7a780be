"""
``tnla`` command-line tool.

    tnla gen        --kind KIND [--n N | --nodes X,..] [--out-bd F] [--out-matrix F]
    tnla bd         --matrix F                        BD by Neville elimination
    tnla expand     --bd F                            dense matrix of a BD grid
    tnla solve      (--bd F | --matrix F | --nodes X,..) --rhs F [--method M]
    tnla eig        --bd F [--method M]               eigenvalues (symmetric grid)
    tnla svd        --bd F [--method M]               singular values
    tnla inv        --bd F [--method M]               inverse
    tnla cond       --bd F [--method M]               spectral condition number
    tnla experiment SELECTOR [--jobs N] [--out F]     CSV accuracy report

Results go to stdout in the matrix/vector file format (17 significant digits,
or exact hex floats with --hex). ``--compare-oracle`` adds errors relative to
an exact or high-precision reference. Polynomial coefficients (``--method bp``)
are in ascending degree.

Exit codes: 0 ok, 2 usage (bad or missing flags, unreadable path), 3 parse
error, 4 any other library error (invalid grid, size mismatch, not TN,
numerical failure), 5 experiment gate failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import List, Optional, Tuple

import numpy as np

from . import baseline, oracle
from .bd import BdMatrix, bd_transpose, neville_bd, tn_expand, tn_inverse_expand, tn_solve
from .classic import bp_dual_solve
from .exceptions import (
    GateFailureError,
    ParseError,
    TnlaError,
    UsageError,
)
from .experiments import SELECTORS, run_experiments
from .fileio import (
    format_matrix,
    format_vector,
    read_bd,
    read_file,
    read_vector,
    write_bd,
    write_matrix,
    write_text,
)
from .generators import cauchy_bd, hilbert_bd, pascal_bd, random_tn_bd, vandermonde_bd
from .spectral import Spectrum, cond2, tn_eigenvalues_sym, tn_singular_values

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DOMAIN = 4
EXIT_GATE = 5

GEN_KINDS = ("vandermonde", "cauchy", "hilbert", "pascal", "random-tn")
METHODS = ("bd", "bp", "baseline")


# ---------------------------------------------------------------------------
# Input helpers
# ---------------------------------------------------------------------------

def _parse_nodes(v: str) -> List[float]:
    try:
        return [float(t) for t in v.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad node list {v!r}") from None


def _need(args: argparse.Namespace, name: str, why: str):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required {why}")
    return value


def _load_operator(args: argparse.Namespace) -> Tuple[Optional[BdMatrix], np.ndarray]:
    """BD grid and dense matrix from --bd or --matrix (one of them)"""
    if getattr(args, "bd", None):
        B = read_bd(args.bd)
        return B, tn_expand(B)
    if getattr(args, "matrix", None):
        A = read_file(args.matrix, "M").data
        return None, A
    raise UsageError("give the operator with --bd FILE or --matrix FILE")


def _exact_operator(B: Optional[BdMatrix], A: np.ndarray):
    return oracle.exact_expand(B) if B is not None else oracle.rational_matrix(A)


def _square_bd(B: Optional[BdMatrix], A: np.ndarray) -> BdMatrix:
    return B if B is not None else neville_bd(A)


# ---------------------------------------------------------------------------
# Rendering helpers
# ---------------------------------------------------------------------------

def _render_spectrum(spec: Spectrum, hex: bool, reference=None) -> str:
    comment = f"kind={spec.kind.value} method={spec.method}"
    if reference is None:
        return format_vector(spec.values, hex, comment)
    errs = [oracle.relative_error(v, r) for v, r in zip(spec.values, reference)]
    table = np.column_stack([spec.values, errs])
    return format_matrix(table, "M", hex, f"{comment}\ncolumns: value relative_error")


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> int:
    kind = args.kind
    if kind == "vandermonde":
        B = vandermonde_bd(_need(args, "nodes", "for --kind vandermonde"))
    elif kind == "cauchy":
        B = cauchy_bd(_need(args, "nodes", "for --kind cauchy"), _need(args, "ynodes", "for --kind cauchy"))
    elif kind == "hilbert":
        B = hilbert_bd(_need(args, "n", "for --kind hilbert"))
    elif kind == "pascal":
        B = pascal_bd(_need(args, "n", "for --kind pascal"))
    else:
        B = random_tn_bd(_need(args, "n", "for --kind random-tn"), args.seed, args.lo, args.hi)
    comment = f"tnla gen --kind {kind}" + (f" --seed {args.seed}" if kind == "random-tn" else "")
    if args.out_matrix:
        write_matrix(args.out_matrix, tn_expand(B), args.hex, comment)
    if args.out_bd or not args.out_matrix:
        write_bd(args.out_bd, B, args.hex, comment)
    return EXIT_OK


def cmd_bd(args: argparse.Namespace) -> int:
    A = read_file(args.matrix, "M").data
    write_bd(args.out, neville_bd(A), args.hex)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    write_matrix(args.out, tn_expand(read_bd(args.bd)), args.hex)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    b = read_vector(args.rhs)
    if args.method == "bp":
        nodes = _need(args, "nodes", "for --method bp")
        x = bp_dual_solve(nodes, b)
        exact = oracle.rational_vandermonde(nodes) if args.compare_oracle else None
    else:
        B, A = _load_operator(args)
        if args.transpose:
            A = A.T
            B = bd_transpose(B) if B is not None else None
        if args.method == "baseline":
            x = baseline.lu_solve(A, b)
        else:
            x = tn_solve(_square_bd(B, A), b)
        exact = _exact_operator(B, A) if args.compare_oracle else None
    comment = None
    if exact is not None:
        err = oracle.relative_norm_error(x, oracle.exact_solve(exact, [oracle.to_fraction(v) for v in b]))
        comment = f"method={args.method} relative_error={err:.6e}"
    write_text(args.out, format_vector(x, args.hex, comment))
    return EXIT_OK


def _spectrum_cmd(args: argparse.Namespace, kind: str) -> Spectrum:
    B, A = _load_operator(args)
    if args.method == "baseline":
        spec = baseline.dense_eig_sym(A) if kind == "eigen-sym" else baseline.dense_svd(A)
    elif args.method == "bd":
        grid = _square_bd(B, A)
        spec = tn_eigenvalues_sym(grid) if kind == "eigen-sym" else tn_singular_values(grid)
    else:
        raise UsageError(f"--method {args.method} does not compute spectra")
    reference = oracle.hp_spectrum(_exact_operator(B, A), kind) if args.compare_oracle else None
    write_text(args.out, _render_spectrum(spec, args.hex, reference))
    return spec


def cmd_eig(args: argparse.Namespace) -> int:
    _spectrum_cmd(args, "eigen-sym")
    return EXIT_OK


def cmd_svd(args: argparse.Namespace) -> int:
    _spectrum_cmd(args, "singular")
    return EXIT_OK


def cmd_inv(args: argparse.Namespace) -> int:
    B, A = _load_operator(args)
    if args.method == "baseline":
        inv = baseline.dense_inverse(A)
    elif args.method == "bd":
        inv = tn_inverse_expand(_square_bd(B, A))
    else:
        raise UsageError(f"--method {args.method} does not compute inverses")
    comment = None
    if args.compare_oracle:
        err = oracle.spectral_norm_error(inv, oracle.exact_inverse(_exact_operator(B, A)))
        comment = f"method={args.method} relative_error={err:.6e}"
    write_text(args.out, format_matrix(inv, "M", args.hex, comment))
    return EXIT_OK


def cmd_cond(args: argparse.Namespace) -> int:
    B, A = _load_operator(args)
    if args.method == "baseline":
        kappa = baseline.dense_svd(A).condition
    elif args.method == "bd":
        kappa = cond2(_square_bd(B, A))
    else:
        raise UsageError(f"--method {args.method} does not compute condition numbers")
    line = f"{kappa:.17g}"
    if args.compare_oracle:
        sv = oracle.hp_spectrum(_exact_operator(B, A), "singular")
        line += f"\n# relative_error={oracle.relative_error(kappa, sv[0] / sv[-1]):.6e}"
    write_text(args.out, line + "\n")
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace) -> int:
    report = run_experiments(args.selector, jobs=args.jobs)
    write_text(args.out, report.to_csv())
    if not report.passed:
        raise GateFailureError(
            f"{len(report.failed)} experiment case(s) failed their gates", rows=report.failed)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Top-level parser
# ---------------------------------------------------------------------------

def _add_operator(p: argparse.ArgumentParser, methods=("bd", "baseline")) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--bd", metavar="FILE", help="BD grid file")
    src.add_argument("--matrix", metavar="FILE", help="dense matrix file (BD by Neville elimination)")
    p.add_argument("--method", choices=methods, default="bd")
    p.add_argument("--compare-oracle", action="store_true",
                   help="append errors relative to an exact/high-precision reference")
    p.add_argument("--out", metavar="FILE", help="output file (default stdout)")
    p.add_argument("--hex", action="store_true", help="write exact hexadecimal floats")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tnla",
        description="Accurate linear algebra with totally nonnegative matrices in BD form.",
    )
    p.add_argument("-v", "--verbose", action="count", default=0,
                   help="log progress to stderr (-v info, -vv debug)")
    sub = p.add_subparsers(dest="cmd", required=True)

    pg = sub.add_parser("gen", help="Generate a structured BD grid and/or matrix")
    pg.add_argument("--kind", choices=GEN_KINDS, required=True)
    pg.add_argument("--n", type=int, help="order (hilbert, pascal, random-tn)")
    pg.add_argument("--nodes", type=_parse_nodes, help="comma-separated x nodes")
    pg.add_argument("--ynodes", type=_parse_nodes, help="comma-separated y nodes (cauchy)")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--lo", type=float, default=0.1)
    pg.add_argument("--hi", type=float, default=10.0)
    pg.add_argument("--out-bd", metavar="FILE")
    pg.add_argument("--out-matrix", metavar="FILE")
    pg.add_argument("--hex", action="store_true")
    pg.set_defaults(func=cmd_gen)

    pb = sub.add_parser("bd", help="BD grid of a dense TN matrix (Neville elimination)")
    pb.add_argument("--matrix", metavar="FILE", required=True)
    pb.add_argument("--out", metavar="FILE")
    pb.add_argument("--hex", action="store_true")
    pb.set_defaults(func=cmd_bd)

    pe = sub.add_parser("expand", help="Dense matrix of a BD grid")
    pe.add_argument("--bd", metavar="FILE", required=True)
    pe.add_argument("--out", metavar="FILE")
    pe.add_argument("--hex", action="store_true")
    pe.set_defaults(func=cmd_expand)

    ps = sub.add_parser("solve", help="Solve A x = b")
    _add_operator(ps, METHODS)
    ps.add_argument("--rhs", metavar="FILE", required=True)
    ps.add_argument("--nodes", type=_parse_nodes,
                    help="Vandermonde nodes for --method bp (coefficients in ascending degree)")
    ps.add_argument("--transpose", action="store_true", help="solve A^T x = b")
    ps.set_defaults(func=cmd_solve)

    for name, func, text in (("eig", cmd_eig, "Eigenvalues of a symmetric grid"),
                             ("svd", cmd_svd, "Singular values"),
                             ("inv", cmd_inv, "Inverse matrix"),
                             ("cond", cmd_cond, "Spectral condition number")):
        pc = sub.add_parser(name, help=text)
        _add_operator(pc)
        pc.set_defaults(func=func)

    px = sub.add_parser("experiment", help="Run accuracy experiments and print a CSV report")
    px.add_argument("selector", choices=SELECTORS)
    px.add_argument("--jobs", type=int, default=1, help="cases to run concurrently")
    px.add_argument("--out", metavar="FILE")
    px.set_defaults(func=cmd_experiment)

    return p


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else (logging.INFO if verbosity == 1 else logging.DEBUG)
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"tnla: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GateFailureError as exc:
        print(f"tnla: {exc}", file=sys.stderr)
        for row in exc.rows:
            print(f"  FAIL {row.case_id}: {'; '.join(row.failures)}", file=sys.stderr)
        return EXIT_GATE
    except (UsageError, OSError) as exc:
        print(f"tnla: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TnlaError as exc:
        logger.debug(f"{args.cmd} failed", exc_info=True)
        print(f"tnla: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
