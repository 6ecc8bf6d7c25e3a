"""``lcscheck`` command line: load a manifold, run suites, print a report.

Exit status is 0 when every applicable check passes, 1 when any check fails
and 2 when the input cannot be loaded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import lcs
from .connection import ConnectionInvariantError
from .deffile import DefinitionError, parse_definition
from .fixtures import FIXTURE_IDS, Fixture, UnknownFixtureError, build, load_builtin
from .manifold import DegenerateError
from .report import VerificationReport
from .symexpr import Expr, ExprError, Indeterminate, Kind, ParseError, parse

__all__ = ["main", "run"]

COMMANDS = ("axioms", "identities", "curvature", "soliton", "theorems", "all")


class InputError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lcscheck", description="Exact checks for (LCS)_n structures and Yamabe solitons.")
    p.add_argument("command", choices=COMMANDS)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="manifold definition file")
    src.add_argument("--fixture", metavar="ID", help=f"built-in manifold: {', '.join(FIXTURE_IDS)}")
    p.add_argument("--lambda", dest="lam", metavar="EXPR", help="soliton constant (may be the parameter 'lambda')")
    p.add_argument("--b", metavar="EXPR", help="collinearity factor, V = b xi")
    p.add_argument("--mode", choices=("raw", "hypothesis", "both"), default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--classical-sign", action="store_true",
                   help="use the negated derivation convention in R(xi,X).S and W2(xi,X).S")
    return p


def _load(args) -> Fixture:
    if args.fixture is not None:
        return load_builtin(args.fixture)
    try:
        text = Path(args.input).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror or exc}") from None
    try:
        return build(parse_definition(text), Path(args.input).stem)
    except DefinitionError as exc:
        raise InputError(f"{args.input}: {exc}") from None


def _scalar(fx: Fixture, text: str, flag: str) -> Expr:
    allowed = [Indeterminate(c, Kind.COORDINATE) for c in fx.definition.coords]
    allowed += [Indeterminate(p, Kind.PARAMETER) for p in fx.definition.params]
    if lcs.LAMBDA not in fx.definition.coords + fx.definition.params:
        allowed.append(Indeterminate(lcs.LAMBDA, Kind.PARAMETER))
    try:
        return parse(text, allowed)
    except ParseError as exc:
        raise InputError(f"{flag} {text!r}: column {exc.column}: {exc.message}") from None


def _candidate(fx: Fixture, lam: Expr | None, b: Expr | None, default_lam: Expr) -> lcs.SolitonCandidate:
    base = fx.candidate
    if b is None and base is not None:
        b = base.b
    if lam is None:
        lam = base.lam if base is not None and fx.definition.lam is not None else default_lam
    if base is not None and fx.definition.v is not None:
        return lcs.SolitonCandidate(base.v, lam, b)
    if b is not None:
        return lcs.SolitonCandidate.collinear(fx.structure, b, lam)
    return lcs.SolitonCandidate(fx.structure.xi, lam)


def _report(args, fx: Fixture) -> VerificationReport:
    lam = _scalar(fx, args.lam, "--lambda") if args.lam is not None else None
    b = _scalar(fx, args.b, "--b") if args.b is not None else None
    g, conn, bundle, st = fx.metric, fx.conn, fx.bundle, fx.structure
    wanted = COMMANDS[:-1] if args.command == "all" else (args.command,)
    report = VerificationReport()
    if "axioms" in wanted:
        report += lcs.check_axioms(st, g, conn)
    if "identities" in wanted:
        report += lcs.check_derived_identities(st, g, conn, bundle)
    if "curvature" in wanted:
        report += lcs.check_curvature(conn, bundle)
    if "soliton" in wanted:
        cand = _candidate(fx, lam, b, Expr.symbol(lcs.LAMBDA))
        report += lcs.check_yamabe_soliton(cand, g, conn, bundle, st)
    if "theorems" in wanted:
        cand = _candidate(fx, lam, b, bundle.scalar)
        report += lcs.theorem_suite(st, cand, g, conn, bundle, mode=args.mode, classical_sign=args.classical_sign)
    return report


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        fx = _load(args)
        report = _report(args, fx)
    except (InputError, UnknownFixtureError) as exc:
        print(f"lcscheck: error: {exc}", file=stderr)
        return 2
    except (DegenerateError, lcs.StructureError, ConnectionInvariantError, ExprError, ValueError) as exc:
        print(f"lcscheck: error: {exc}", file=stderr)
        return 2
    stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return report.exit_code


def main() -> None:
    sys.exit(run())
