"""solvlie command line: validate, query, conjugacy, theorems, fixture, random."""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional

import config
from core.errors import InvalidFixture, SolvLieError, VerificationFailed
from core.lie_core import LieAlgebra
from core.theorem_lab import HYPOTHESIS_NOT_MET, decide_conjugacy
from evaluation.report import FAIL, PASS, SKIPPED, CheckRecord, Report, algebra_digest, error_report
from pipeline.theorem_sweep import TheoremSweepPipeline
from utils.algebra_io import dump_document, load_algebra, parse_subspace
from utils.catalog import CatalogEntry, FixtureId, catalog, fixture, parse_field, random_solvable

logger = logging.getLogger(__name__)

QUERIES = ["core", "centralizer", "chief-series", "maximals", "minimal-ideals"]


def resolve_algebra_path(name: str) -> Path:
    """A file path, or the stem of a shipped fixture document."""
    path = Path(name)
    if path.exists():
        return path
    shipped = Path(config.FIXTURES_DIR) / f"{name}.json"
    if shipped.exists():
        return shipped
    raise InvalidFixture(f"No such algebra document: {name}")


def _command(args: argparse.Namespace) -> Dict[str, Any]:
    """Echo of the parsed arguments with a stable key order."""
    skip = {"func", "output", "verbose"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def cmd_validate(args: argparse.Namespace) -> Report:
    algebra = load_algebra(resolve_algebra_path(args.file))
    report = Report(command=_command(args), algebras=[algebra_digest(algebra, args.file)])
    report.add(CheckRecord("parse", args.file, PASS))
    report.add(CheckRecord("jacobi", args.file, PASS))
    series = algebra.derived_series()
    report.add(CheckRecord("solvable", args.file, PASS if algebra.is_solvable() else FAIL, "",
                           {"derived_series_dims": [s.dim for s in series]}))
    return report


def cmd_query(args: argparse.Namespace) -> Report:
    algebra = load_algebra(resolve_algebra_path(args.file))
    report = Report(command=_command(args), algebras=[algebra_digest(algebra, args.file)])
    cap = args.subspace_cap
    if args.what in ("core", "centralizer"):
        if args.subspace is None:
            raise SolvLieError(f"query {args.what} needs --subspace")
        u = parse_subspace(args.subspace, algebra)
        value = algebra.core(u) if args.what == "core" else algebra.centralizer(u)
        report.result = {"what": args.what, "subspace": str(u), "value": str(value)}
    elif args.what == "chief-series":
        series = algebra.chief_series(cap=cap)
        report.result = {"what": args.what, "terms": [str(t) for t in series.terms],
                         "factor_dims": series.factor_dims()}
    elif args.what == "maximals":
        found = algebra.maximal_subalgebras(cap=cap)
        report.result = {"what": args.what, "count": len(found), "subspaces": [str(m) for m in found]}
    else:
        found = algebra.minimal_ideals(cap=cap)
        report.result = {"what": args.what, "count": len(found), "subspaces": [str(a) for a in found]}
    return report


def cmd_conjugacy(args: argparse.Namespace) -> Report:
    algebra = load_algebra(resolve_algebra_path(args.file))
    m = parse_subspace(args.m, algebra)
    k = parse_subspace(args.k, algebra)
    report = Report(command=_command(args), algebras=[algebra_digest(algebra, args.file)])
    instance = f"{m} | {k}"
    try:
        verdict = decide_conjugacy(algebra, m, k, method=args.method, cap=args.group_cap)
    except VerificationFailed as e:
        logger.error(f"Conjugacy check failed: {e}")
        report.add(CheckRecord("conjugacy", args.file, FAIL, instance, e.to_dict()))
        return report
    report.result = verdict.to_dict()
    status = SKIPPED if verdict.verdict == HYPOTHESIS_NOT_MET else PASS
    report.add(CheckRecord("conjugacy", args.file, status, instance, {"verdict": verdict.verdict}))
    return report


def _theorem_entries(args: argparse.Namespace) -> List[CatalogEntry]:
    if args.file:
        return [CatalogEntry(name, load_algebra(resolve_algebra_path(name))) for name in args.file]
    return catalog(args.catalog, seed=args.seed, count=args.count)


def cmd_theorems(args: argparse.Namespace) -> Report:
    started = time.perf_counter()
    entries = _theorem_entries(args)
    pipeline = TheoremSweepPipeline(suite=args.suite, seed=args.seed, samples=args.samples,
                                    subspace_cap=args.subspace_cap, group_cap=args.group_cap,
                                    search_cap=args.search_cap)
    report = Report(command=_command(args), algebras=[algebra_digest(e.algebra, e.label) for e in entries])
    report.extend(pipeline.run(entries))
    if args.timing:
        report.timing = {"seconds": round(time.perf_counter() - started, 3)}
    summary = report.summary()
    logger.info(f"Sweep done: {summary['pass']} pass, {summary['fail']} fail, {summary['skipped']} skipped")
    return report


def cmd_fixture(args: argparse.Namespace) -> str:
    return dump_document(fixture(FixtureId.parse(args.name, parse_field(args.field))))


def cmd_random(args: argparse.Namespace) -> str:
    algebra: LieAlgebra = random_solvable(args.seed, args.dim, parse_field(args.field), ambient_n=args.ambient)
    return dump_document(algebra)


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--subspace-cap", type=int, default=None,
                   help=f"Subspace enumeration cap (default {config.MAX_SUBSPACES})")
    p.add_argument("--group-cap", type=int, default=None,
                   help=f"Group closure and orbit cap (default {config.MAX_GROUP_ELEMENTS})")
    p.add_argument("--search-cap", type=int, default=None,
                   help=f"Conjugator search cap (default {config.MAX_CONJUGATOR_SEARCH})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="solvlie", description="Exact conjugacy kernel for solvable Lie algebras")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log progress at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--output", default=None, help="Write the JSON to this file instead of stdout")

    p = sub.add_parser("validate", parents=[output], help="Parse a document, check Jacobi and solvability")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("query", parents=[output], help="Core, centralizer, chief series, maximals or minimal ideals")
    p.add_argument("file")
    p.add_argument("what", choices=QUERIES)
    p.add_argument("--subspace", default=None, help='Rows like "0,1,0;1,0,2"')
    _add_caps(p)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("conjugacy", parents=[output], help="Decide whether two maximal subalgebras are conjugate")
    p.add_argument("file")
    p.add_argument("m")
    p.add_argument("k")
    p.add_argument("--method", choices=["core", "brute", "both"], default="core")
    _add_caps(p)
    p.set_defaults(func=cmd_conjugacy)

    p = sub.add_parser("theorems", parents=[output], help="Sweep theorem checks over a catalog")
    source = p.add_mutually_exclusive_group()
    source.add_argument("--catalog", default=config.DEFAULT_CATALOG, help='e.g. "gf2,gf3,dim<=4"')
    source.add_argument("--file", action="append", default=None, help="Algebra document (repeatable)")
    p.add_argument("--suite", choices=config.SUITES, default="all")
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--count", type=int, default=0, help="Random algebras per finite field")
    p.add_argument("--samples", type=int, default=config.AUTOMORPHISM_SAMPLES,
                   help="Random elements per algebra for the automorphism suite")
    p.add_argument("--timing", action="store_true", help="Include wall-clock time in the report")
    _add_caps(p)
    p.set_defaults(func=cmd_theorems)

    p = sub.add_parser("fixture", parents=[output], help="Emit a catalog algebra as JSON")
    p.add_argument("name", help="e.g. heisenberg3, dim3_scaled(2), upper_triangular(3), example4")
    p.add_argument("--field", default="gf2")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("random", parents=[output], help="Emit a seeded random solvable algebra as JSON")
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--field", default="gf2")
    p.add_argument("--ambient", type=int, default=config.RANDOM_AMBIENT_N)
    p.set_defaults(func=cmd_random)
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else config.LOG_LEVEL,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        result = args.func(args)
    except SolvLieError as e:
        logger.error(f"{args.command} aborted: {e}")
        _emit(json.dumps(error_report(_command(args), e), indent=2, default=str) + "\n", args.output)
        return 2
    if isinstance(result, str):
        _emit(result, args.output)
        return 0
    _emit(result.to_json(), args.output)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
