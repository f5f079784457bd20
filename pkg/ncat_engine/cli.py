"""Command-line interface for ncat-galois.

Usage:
    ncat-galois validate terminal2.ncat
    ncat-galois validate --functor eta.nfun
    ncat-galois reflect a.ncat -o out/
    ncat-galois classify f.nfun
    ncat-galois factor --system ml f.nfun -o out/
    ncat-galois pullback f.nfun g.nfun -o out/
    ncat-galois product a.ncat b.ncat -o out/
    ncat-galois coproduct a.ncat b.ncat c.ncat -o out/
    ncat-galois edm b.ncat -o out/
    ncat-galois check --suite crosscheck --n 2 --size 3 --seed 7 --trials 50

Exit codes are 0 on success, 1 on a validation or property failure and 2 on a
usage, parse or configuration error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from ncat_engine.config import ConfigError
from ncat_engine.descent import build_edm, is_edm_sufficient
from ncat_engine.factor import (
    Factorization,
    MorphismClass,
    classify,
    ml_factorize,
    reflective_factorize,
)
from ncat_engine.files import (
    FileFormatError,
    read_functor,
    read_ncat,
    write_functor,
    write_json,
    write_ncat,
)
from ncat_engine.limits import (
    CodomainMismatchError,
    DimensionMismatchError,
    coproduct,
    product,
    pullback,
)
from ncat_engine.ncat import NCat, NFunctor
from ncat_engine.reflect import reflect
from ncat_engine.search import EnumerationLimitError
from ncat_engine.validator import (
    NCatValidationError,
    check_functor,
    check_ncat,
    is_functor_valid,
    validate_ncat,
)
from suites.properties import SUITES
from suites.runner import SuiteProgress, TrialResult, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _load_ncat(path: str) -> NCat:
    return validate_ncat(read_ncat(path))


def _load_functor(path: str) -> NFunctor:
    f = read_functor(path)
    validate_ncat(f.dom)
    validate_ncat(f.cod)
    return is_functor_valid(f)


def _flag(value: bool) -> str:
    return "true" if value else "false"


def format_class(verdict: MorphismClass) -> str:
    """One line of flags, then one indented line per failed flag."""
    lines = [" ".join(f"{name}={_flag(value)}" for name, value in verdict.flags().items())]
    for name, witness in verdict.witnesses.items():
        lines.append(f"  {name}: {witness}")
    return "\n".join(lines)


def cmd_validate(args: argparse.Namespace) -> int:
    if args.functor:
        f = read_functor(args.file)
        violation = check_ncat(f.dom) or check_ncat(f.cod) or check_functor(f)
    else:
        violation = check_ncat(read_ncat(args.file))
    if violation is None:
        print("OK")
        return EXIT_OK
    print(f"INVALID: {violation}")
    return EXIT_FAILURE


def cmd_reflect(args: argparse.Namespace) -> int:
    result = reflect(_load_ncat(args.file))
    out = Path(args.output)
    write_ncat(out / "image.ncat", result.image)
    write_functor(out / "unit.nfun", result.unit)
    before, after = len(result.unit.dom.cells[-1]), len(result.image.cells[-1])
    print(f"reflected {before} top cells onto {after} classes")
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    print(format_class(classify(_load_functor(args.file))))
    return EXIT_OK


def _certificate(factorization: Factorization) -> dict[str, object]:
    left, right = classify(factorization.e), classify(factorization.m)
    return {
        "system": factorization.system.name.lower(),
        "e": left.flags(),
        "m": right.flags(),
        "left_class": left.in_left_class(factorization.system),
        "right_class": right.in_right_class(factorization.system),
    }


def cmd_factor(args: argparse.Namespace) -> int:
    f = _load_functor(args.file)
    factorization = reflective_factorize(f) if args.system == "reflective" else ml_factorize(f)
    out = Path(args.output)
    write_functor(out / "e.nfun", factorization.e)
    write_ncat(out / "middle.ncat", factorization.middle)
    write_functor(out / "m.nfun", factorization.m)
    certificate = _certificate(factorization)
    write_json(out / "certificate.json", certificate)
    print(f"e: {format_class(classify(factorization.e))}")
    print(f"m: {format_class(classify(factorization.m))}")
    held = certificate["left_class"] and certificate["right_class"]
    return EXIT_OK if held else EXIT_FAILURE


def _write_span(out: Path, apex: NCat, p1: NFunctor, p2: NFunctor) -> None:
    write_ncat(out / "apex.ncat", apex)
    write_functor(out / "p1.nfun", p1)
    write_functor(out / "p2.nfun", p2)


def cmd_pullback(args: argparse.Namespace) -> int:
    result = pullback(_load_functor(args.f), _load_functor(args.g))
    _write_span(Path(args.output), *result)
    print(f"pullback has cells per level {list(result.apex.cells_count())}")
    return EXIT_OK


def cmd_product(args: argparse.Namespace) -> int:
    result = product(_load_ncat(args.a), _load_ncat(args.b))
    _write_span(Path(args.output), *result)
    print(f"product has cells per level {list(result.apex.cells_count())}")
    return EXIT_OK


def cmd_coproduct(args: argparse.Namespace) -> int:
    parts = [_load_ncat(path) for path in args.files]
    try:
        result = coproduct(parts, args.tags.split(",") if args.tags else None)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.output)
    write_ncat(out / "apex.ncat", result.apex)
    for k, injection in enumerate(result.injections):
        write_functor(out / f"in{k}.nfun", injection)
    print(f"coproduct has cells per level {list(result.apex.cells_count())}")
    return EXIT_OK


def cmd_edm(args: argparse.Namespace) -> int:
    cover = build_edm(_load_ncat(args.file))
    verdict = is_edm_sufficient(cover.projection)
    out = Path(args.output)
    write_ncat(out / "total.ncat", cover.total)
    write_functor(out / "projection.nfun", cover.projection)
    write_json(
        out / "verdict.json",
        {
            "sufficient": verdict.sufficient,
            "missing": None if verdict.missing is None else str(verdict.missing),
            "configurations": len(cover.configs),
            "fallbacks": cover.fallbacks,
        },
    )
    print(f"sufficient={_flag(verdict.sufficient)} configurations={len(cover.configs)}")
    return EXIT_OK if verdict.sufficient else EXIT_FAILURE


def _log_progress(result: TrialResult, progress: SuiteProgress) -> None:
    logger.debug(
        f"trial {result.index} done: {progress.completed}/{progress.total} complete, "
        f"{progress.failures} failed, {progress.trials_per_second:.1f} trials/s"
    )


def cmd_check(args: argparse.Namespace) -> int:
    callback = _log_progress if args.verbose else None
    report = run_suite(
        args.suite, args.n, args.size, args.seed, args.trials, args.workers, callback=callback
    )
    for result in report.results:
        status = "SKIP" if result.skipped else ("PASS" if result.passed else "FAIL")
        line = f"trial {result.index} seed {result.seed}: {status}"
        print(f"{line} {result.detail}" if result.detail else line)
    failures = len(report.failures())
    print(f"{args.suite}: {args.trials - failures}/{args.trials} passed")
    if args.output:
        write_json(args.output, report.to_dict())
    return EXIT_OK if report.passed else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncat-galois", description="Finite strict n-categories and their n-preorder reflection"
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug output to stderr")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    validate_parser = subparsers.add_parser("validate", help="Validate an n-category file")
    validate_parser.add_argument("file", help="NCat file, or NFunctor file with --functor")
    validate_parser.add_argument(
        "--functor", action="store_true", help="Treat the file as an n-functor"
    )
    validate_parser.set_defaults(handler=cmd_validate)

    reflect_parser = subparsers.add_parser("reflect", help="Reflect into n-preorders")
    reflect_parser.add_argument("file", help="NCat file")
    reflect_parser.add_argument("-o", "--output", required=True, help="Output directory")
    reflect_parser.set_defaults(handler=cmd_reflect)

    classify_parser = subparsers.add_parser("classify", help="Print the four class flags")
    classify_parser.add_argument("file", help="NFunctor file")
    classify_parser.set_defaults(handler=cmd_classify)

    factor_parser = subparsers.add_parser("factor", help="Factorize an n-functor")
    factor_parser.add_argument("file", help="NFunctor file")
    factor_parser.add_argument(
        "--system", choices=["reflective", "ml"], default="reflective", help="Factorization system"
    )
    factor_parser.add_argument("-o", "--output", required=True, help="Output directory")
    factor_parser.set_defaults(handler=cmd_factor)

    pullback_parser = subparsers.add_parser("pullback", help="Pullback of a cospan")
    pullback_parser.add_argument("f", help="NFunctor file A -> C")
    pullback_parser.add_argument("g", help="NFunctor file B -> C")
    pullback_parser.add_argument("-o", "--output", required=True, help="Output directory")
    pullback_parser.set_defaults(handler=cmd_pullback)

    product_parser = subparsers.add_parser("product", help="Product of two n-categories")
    product_parser.add_argument("a", help="NCat file")
    product_parser.add_argument("b", help="NCat file")
    product_parser.add_argument("-o", "--output", required=True, help="Output directory")
    product_parser.set_defaults(handler=cmd_product)

    coproduct_parser = subparsers.add_parser("coproduct", help="Coproduct of n-categories")
    coproduct_parser.add_argument("files", nargs="+", help="NCat files")
    coproduct_parser.add_argument("--tags", help="Comma-separated summand tags")
    coproduct_parser.add_argument("-o", "--output", required=True, help="Output directory")
    coproduct_parser.set_defaults(handler=cmd_coproduct)

    edm_parser = subparsers.add_parser("edm", help="Cover an n-category by an n-preorder")
    edm_parser.add_argument("file", help="NCat file")
    edm_parser.add_argument("-o", "--output", required=True, help="Output directory")
    edm_parser.set_defaults(handler=cmd_edm)

    check_parser = subparsers.add_parser("check", help="Run a randomized property suite")
    check_parser.add_argument("--suite", required=True, choices=list(SUITES), help="Suite name")
    check_parser.add_argument("--n", type=int, default=2, help="Dimension (default: 2)")
    check_parser.add_argument(
        "--size", type=int, default=3, help="Non-identity cells per level (default: 3)"
    )
    check_parser.add_argument("--seed", type=int, default=0, help="Seed of trial 0 (default: 0)")
    check_parser.add_argument("--trials", type=int, default=20, help="Trials (default: 20)")
    check_parser.add_argument(
        "--workers", type=int, help="Worker processes (default: NCAT_GALOIS_WORKERS or 1)"
    )
    check_parser.add_argument("--output", help="Write a JSON trial report to this file")
    check_parser.set_defaults(handler=cmd_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        from dotenv import load_dotenv

        load_dotenv()
    except ImportError:
        pass

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    if getattr(args, "n", 1) < 1:
        parser.error("--n must be at least 1")

    logger.debug(f"running {args.command}")
    try:
        return int(args.handler(args))
    except NCatValidationError as e:
        print(f"INVALID: {e.violation}", file=sys.stderr)
        return EXIT_FAILURE
    except (
        FileFormatError,
        ConfigError,
        EnumerationLimitError,
        CodomainMismatchError,
        DimensionMismatchError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
