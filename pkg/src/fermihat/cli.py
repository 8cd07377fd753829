"""Command-line front end.

Subcommands::

    normal-order <expr>          print the canonical normal-ordered form
    verify <suite>               run an identity suite (car, product,
                                 commutator, anticommutator, sectors, exp,
                                 bch, kraus, pairing, bose, all)
    repr <expr> --sector k       print the k-particle sector matrix
    eig <expr>                   print the Fock spectrum and per-sector spectra
    channel <kraus-file> <expr>  apply the embedded Kraus channel

Common flags (accepted after the subcommand): ``--modes``, ``--tol``,
``--seed``, ``--cutoff``, ``--format text|json``, ``--matrices FILE``
(repeatable).  ``FERMIHAT_TOL`` overrides the default tolerance.  Exit
codes: 0 success, 1 assertion/verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from fermihat.algebra import ModeMismatchError, ToleranceConfig
from fermihat.channels import KrausSet, apply_channel_poly
from fermihat.embedding import IdentityError, ShapeError
from fermihat.exprparse import EvalError, ExprSyntaxError, contains_exp, evaluate, evaluate_fock, parse
from fermihat.fock import FockSizeError, SectorBasis, eigenvalues, poly_to_fock
from fermihat.verify import SUITE_NAMES, format_report, run_suites
from fermihat.workspace import MatrixFileError, Workspace, load_matrix_file, matrix_to_json

_USAGE_ERRORS = (ExprSyntaxError, EvalError, ModeMismatchError, ShapeError,
                 MatrixFileError, FockSizeError, ValueError, OSError)


def _fmt_complex(z: complex, digits: int = 10) -> str:
    re = z.real + 0.0
    im = z.imag + 0.0
    return f"{re:.{digits}g}{im:+.{digits}g}i"


def _print_matrix(m: np.ndarray, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(matrix_to_json(m)))
        return
    for row in m:
        print("  ".join(_fmt_complex(z) for z in row))


def _sorted_eigs(values: np.ndarray) -> list[complex]:
    return sorted((complex(z) for z in values), key=lambda z: (z.real, z.imag))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modes", type=int, default=None,
                        help="mode count (default: largest loaded matrix, else 2)")
    common.add_argument("--tol", type=float, default=None,
                        help="comparison tolerance (default 1e-12 or FERMIHAT_TOL)")
    common.add_argument("--seed", type=int, default=0, help="RNG seed for verify")
    common.add_argument("--cutoff", type=int, default=3, help="boson occupation cutoff")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--matrices", action="append", default=[], metavar="FILE",
                        help="JSON matrix file to load (repeatable)")

    parser = argparse.ArgumentParser(
        prog="fermihat",
        description="Quadratic forms in Fermi operators: normal ordering, "
                    "sector representations, and identity verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-order", parents=[common],
                       help="print the canonical form of an expression")
    p.add_argument("expr")

    p = sub.add_parser("verify", parents=[common], help="run an identity suite")
    p.add_argument("suite", choices=SUITE_NAMES + ("all",))

    p = sub.add_parser("repr", parents=[common], help="print a sector matrix")
    p.add_argument("expr")
    p.add_argument("--sector", type=int, required=True, metavar="K")

    p = sub.add_parser("eig", parents=[common],
                       help="print Fock and per-sector spectra")
    p.add_argument("expr")

    p = sub.add_parser("channel", parents=[common],
                       help="apply an embedded Kraus channel to an expression")
    p.add_argument("kraus_file")
    p.add_argument("expr")
    return parser


def _make_workspace(args) -> Workspace:
    tol_value = args.tol
    if tol_value is None:
        env = os.environ.get("FERMIHAT_TOL")
        tol_value = float(env) if env else None
    tol = ToleranceConfig(zero_threshold=tol_value) if tol_value is not None else None
    return Workspace.build(files=args.matrices, modes=args.modes, tol=tol,
                           boson_cutoff=args.cutoff)


def _cmd_normal_order(args) -> int:
    ws = _make_workspace(args)
    poly = evaluate(parse(args.expr), ws)
    if args.format == "json":
        print(json.dumps({"n_modes": poly.n_modes, "canonical": str(poly)}))
    else:
        print(poly)
    return 0


def _cmd_verify(args) -> int:
    results = run_suites(args.suite, seed=args.seed, tol_override=args.tol)
    if args.format == "json":
        print(json.dumps({
            "seed": args.seed,
            "passed": all(r.passed for r in results),
            "cases": [{"suite": r.suite, "case": r.name, "passed": r.passed,
                       "max_err": r.max_err} for r in results],
        }))
    else:
        print(format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _cmd_repr(args) -> int:
    ws = _make_workspace(args)
    node = parse(args.expr)
    fockmat = evaluate_fock(node, ws)
    basis = SectorBasis.build(ws.n_modes, args.sector)
    idx = np.array(basis.states, dtype=np.intp)
    _print_matrix(fockmat[np.ix_(idx, idx)], args.format)
    return 0


def _cmd_eig(args) -> int:
    ws = _make_workspace(args)
    node = parse(args.expr)
    if contains_exp(node):
        fockmat = evaluate_fock(node, ws)
    else:
        fockmat = poly_to_fock(evaluate(node, ws))
    sectors = {}
    for k in range(ws.n_modes + 1):
        idx = np.array(SectorBasis.build(ws.n_modes, k).states, dtype=np.intp)
        sectors[k] = _sorted_eigs(eigenvalues(fockmat[np.ix_(idx, idx)]))
    full = _sorted_eigs(eigenvalues(fockmat))
    if args.format == "json":
        print(json.dumps({
            "sectors": {str(k): [[z.real, z.imag] for z in v] for k, v in sectors.items()},
            "full": [[z.real, z.imag] for z in full],
        }))
    else:
        for k, vals in sectors.items():
            print(f"sector {k}: " + ", ".join(_fmt_complex(z) for z in vals))
        print("full: " + ", ".join(_fmt_complex(z) for z in full))
    return 0


def _cmd_channel(args) -> int:
    ws = _make_workspace(args)
    mats = load_matrix_file(args.kraus_file)
    if not mats:
        raise MatrixFileError(f"{args.kraus_file}: no Kraus operators found")
    ks = KrausSet.from_matrices(list(mats.values()))
    poly = evaluate(parse(args.expr), ws)
    out = apply_channel_poly(ks, poly)
    if args.format == "json":
        print(json.dumps({"n_modes": out.n_modes, "canonical": str(out)}))
    else:
        print(out)
    return 0


_COMMANDS = {
    "normal-order": _cmd_normal_order,
    "verify": _cmd_verify,
    "repr": _cmd_repr,
    "eig": _cmd_eig,
    "channel": _cmd_channel,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except IdentityError as exc:
        print(f"identity violated: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
