"""
Command-line surface: ``homlie <command> ...``.

JSON results go to stdout, logs and error documents to stderr. Exit codes:
0 pass, 1 check failed, 2 hypothesis or validation rejected, 3 parse error,
4 unexpected failure.
"""

import argparse
import json
import logging
import sys
import uuid
from pathlib import Path
from typing import Any, Dict, List, Optional

from src.algebra.homlie import AnyAlgebra, QuadraticHomLieAlgebra, center, derived_subalgebra, underlying
from src.algebra.verify import full_report, nilpotency_index, twist_rank_profile
from src.catalog.examples import killing_twisted_cotangent, mu_from_assignments
from src.catalog.generator import FAMILIES, ExtensionDataGenerator
from src.errors import (
    AxiomError,
    DimensionMismatchError,
    HomLieError,
    HypothesisError,
    NotAnIdealError,
    ParseError,
    StructureError,
)
from src.extension.builder import build_and_certify
from src.extension.hypotheses import check_hypotheses
from src.monitoring.logger_config import HomLieLogger, OperationLogger
from src.serialization.codec import (
    dump,
    extension_to_dict,
    parse_algebra,
    parse_extension,
    serialize_algebra,
    serialize_decomposition,
    serialize_report,
)
from src.settings import configure
from src.structure.decomposition import decompose, roundtrip
from src.structure.fitting import fitting
from src.structure.simplicity import centroid_space, certify_simple
from src.structure.validation import validate_decomposition

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_REJECTED = 2
EXIT_PARSE_ERROR = 3
EXIT_UNEXPECTED = 4

ERROR_CODES = (
    (HypothesisError, "hypothesis_failed"),
    (NotAnIdealError, "not_an_ideal"),
    (AxiomError, "axiom"),
    (StructureError, "structure"),
    (DimensionMismatchError, "dimension_mismatch"),
    (HomLieError, "homlie_error"),
)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError("io_error", f"Cannot read '{path}': {e.strerror}", path)


def _emit(text: str, output: Optional[str] = None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _quadratic(a: AnyAlgebra, command: str) -> QuadraticHomLieAlgebra:
    if not isinstance(a, QuadraticHomLieAlgebra):
        raise StructureError(f"'{command}' needs an algebra with a metric")
    return a


def _nilpotent_part(q: QuadraticHomLieAlgebra) -> QuadraticHomLieAlgebra:
    split = fitting(q)
    part = split.nilpotent_part
    if part.dim == 0:
        raise StructureError("the twist is invertible; there is no nilpotent part to decompose")
    if split.lie_part.dim:
        logger.info(f"Splitting off a Lie part of dimension {split.lie_part.dim}")
    assert isinstance(part, QuadraticHomLieAlgebra)
    return part


def cmd_verify(args: argparse.Namespace) -> int:
    a = parse_algebra(_read(args.file))
    checks = [c.strip() for c in args.checks.split(",") if c.strip()] if args.checks else None
    report = full_report(a, checks=checks)
    _emit(serialize_report(report))
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_construct(args: argparse.Namespace) -> int:
    d = parse_extension(_read(args.file))
    hypotheses = check_hypotheses(d)
    if not hypotheses.passed:
        names = ", ".join(c.name for c in hypotheses.failures)
        raise HypothesisError(f"Extension data fails hypotheses: {names}", report=hypotheses)

    q, certification = build_and_certify(d)
    if args.output:
        _emit(serialize_algebra(q), args.output)
        _emit(dump({"hypotheses": hypotheses.to_dict(), "certification": certification.to_dict()}))
    else:
        _emit(serialize_algebra(q))
    return EXIT_OK if certification.passed else EXIT_CHECK_FAILED


def cmd_decompose(args: argparse.Namespace) -> int:
    q = _quadratic(parse_algebra(_read(args.file)), "decompose")
    part = _nilpotent_part(q)
    data = decompose(part)
    validation = validate_decomposition(data, part)
    _emit(serialize_decomposition(data, validation, lie_dim=q.dim - part.dim), args.output)
    return EXIT_OK if validation.passed else EXIT_REJECTED


def cmd_analyze(args: argparse.Namespace) -> int:
    a = parse_algebra(_read(args.file))
    g = underlying(a)
    profile = twist_rank_profile(g.twist)
    certificate = certify_simple(g)
    document: Dict[str, Any] = {
        "dim": g.dim,
        "center_dim": center(g).dim,
        "derived_dim": derived_subalgebra(g).dim,
        "centroid_dim": centroid_space(g).dim,
        "nilpotency_index": nilpotency_index(g.twist),
        "twist_rank_profile": profile,
        "fitting_index": len(profile) - 1,
        "simple": certificate.to_dict(),
    }
    _emit(dump(document))
    return EXIT_OK


def cmd_example(args: argparse.Namespace) -> int:
    n = {"sl2": 2, "sl3": 3}[args.name]
    mu = mu_from_assignments(args.mu or [])
    q = killing_twisted_cotangent(n, mu, args.scale)
    _emit(serialize_algebra(q), args.output)
    return EXIT_OK


def cmd_roundtrip(args: argparse.Namespace) -> int:
    q = _quadratic(parse_algebra(_read(args.file)), "roundtrip")
    result = roundtrip(_nilpotent_part(q))
    document = result.to_dict()
    document["status"] = "exact match" if result.exact_match else "mismatch"
    _emit(dump(document))
    return EXIT_OK if result.exact_match else EXIT_CHECK_FAILED


def cmd_generate(args: argparse.Namespace) -> int:
    generator = ExtensionDataGenerator(args.seed)
    if args.output:
        paths = generator.write_files(Path(args.output), args.count)
        _emit(dump({"files": [str(p) for p in paths]}))
    else:
        _emit(dump({"extensions": [extension_to_dict(generator.generate()) for _ in range(args.count)]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="homlie", description="Exact toolkit for quadratic Hom-Lie algebras")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
    parser.add_argument("--log-format", default=None, choices=["json", "console"], help="Log renderer")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads for exhaustive checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="Check every axiom and report structural facts")
    p.add_argument("file", help="Algebra file, or - for stdin")
    p.add_argument("--checks", default=None, help="Comma-separated check names or prefixes")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("construct", help="Build the double extension of an extension file")
    p.add_argument("file", help="Extension file, or - for stdin")
    p.add_argument("-o", "--output", default=None, help="Write the algebra here and print the report")
    p.set_defaults(handler=cmd_construct)

    p = sub.add_parser("decompose", help="Decompose along the maximal ideal and validate")
    p.add_argument("file", help="Algebra file, or - for stdin")
    p.add_argument("-o", "--output", default=None, help="Output file")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("analyze", help="Center, derived algebra, centroid and twist invariants")
    p.add_argument("file", help="Algebra file, or - for stdin")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("example", help="Emit a Killing-twisted cotangent algebra")
    p.add_argument("name", choices=["sl2", "sl3"])
    p.add_argument("--mu", action="append", metavar="i,j,k=p/q", help="Cyclic 3-form value (1-based)")
    p.add_argument("--scale", default="1", help="Multiple of the Killing form used as twist")
    p.add_argument("-o", "--output", default=None, help="Output file")
    p.set_defaults(handler=cmd_example)

    p = sub.add_parser("roundtrip", help="Decompose, rebuild and compare exactly")
    p.add_argument("file", help="Algebra file, or - for stdin")
    p.set_defaults(handler=cmd_roundtrip)

    p = sub.add_parser("generate", help=f"Random extension data ({', '.join(FAMILIES)})")
    p.add_argument("seed", type=int)
    p.add_argument("--count", "-c", type=int, default=1)
    p.add_argument("-o", "--output", default=None, help="Output directory")
    p.set_defaults(handler=cmd_generate)
    return parser


def _error_document(error: HomLieError) -> Dict[str, Any]:
    if isinstance(error, ParseError):
        return error.to_dict()
    code = next(c for cls, c in ERROR_CODES if isinstance(error, cls))
    return {"error": code, "message": str(error), "location": None}


def _report_error(document: Dict[str, Any]) -> None:
    sys.stderr.write(json.dumps(document, sort_keys=True) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = configure(threads=args.threads, log_level=args.log_level, log_format=args.log_format)
    except ValueError as e:
        _report_error({"error": "configuration", "message": str(e), "location": None})
        return EXIT_PARSE_ERROR
    HomLieLogger.setup_logging(settings.log_level, settings.log_format, settings.log_file)

    correlation_id = str(uuid.uuid4())
    try:
        with OperationLogger(args.command, correlation_id):
            return int(args.handler(args))
    except ParseError as e:
        _report_error(e.to_dict())
        return EXIT_PARSE_ERROR
    except HypothesisError as e:
        if e.report is not None:
            _emit(dump({"hypotheses": e.report.to_dict()}))
        _report_error(_error_document(e))
        return EXIT_REJECTED
    except HomLieError as e:
        _report_error(_error_document(e))
        return EXIT_REJECTED
    except Exception as e:
        logger.exception(f"Unexpected failure in '{args.command}': {e}")
        _report_error({"error": "internal", "message": str(e), "location": None})
        return EXIT_UNEXPECTED


if __name__ == "__main__":
    sys.exit(main())
