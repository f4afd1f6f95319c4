"""Command-line interface.

Subcommands:
    delta FILE               certified δ or Undecided
    semigroup FILE           value semigroup (single branch)
    truncate FILE --order N  print the truncated document
    scan FILE                specialize a family and audit semicontinuity
    oracle FILE --D N        brute-force δ_{≤D} (acceptance runs; not listed)

Exit codes: 0 success / audit PASS, 2 Undecided, 3 invalid input,
4 audit FAIL.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from app.constants import (
    APP_NAME,
    APP_VERSION,
    DEFAULT_D_INIT,
    DEFAULT_D_MAX,
    DEFAULT_POINT_COUNT,
    DEFAULT_SCAN_WORKERS,
    DEFAULT_STRATEGY,
    ENGINE_STRATEGIES,
    EXIT_AUDIT_FAIL,
    EXIT_INVALID_INPUT,
    EXIT_OK,
    EXIT_UNDECIDED,
)
from app.core.delta_engine import DeltaEngine
from app.core.errors import CurveToolError, DocumentSyntaxError, MultiBranch
from app.core.family_scan import FamilyScanner, default_points, truncate_family
from app.core.oracle import brute_delta
from app.core.parameterization import truncate
from app.core.serializers import dumps, load_document, point_from_label, serialize_document
from app.export.chart_export import ChartExporter
from app.export.csv_export import CsvExporter
from app.export.text_report import emit_report
from app.models.config import EngineConfig, ScanConfig
from app.models.document import InputDocument
from app.models.family import FamilyParameterization
from app.models.param import Parameterization
from app.models.results import DeltaCertificate
from app.workers.scan_worker import ScanWorker

logger = logging.getLogger(__name__)

_VISIBLE_COMMANDS = "{delta,semigroup,truncate,scan}"


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="input document (JSON, UTF-8)")
    common.add_argument("--dinit", type=int, default=None,
                        help=f"initial precision D (default {DEFAULT_D_INIT})")
    common.add_argument("--dmax", type=int, default=None,
                        help=f"largest precision D (default {DEFAULT_D_MAX})")
    common.add_argument("--strategy", choices=ENGINE_STRATEGIES, default=None,
                        help=f"spanning strategy (default {DEFAULT_STRATEGY})")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v info, -vv debug logging on stderr")

    parser = argparse.ArgumentParser(
        prog="curve-delta",
        description=f"{APP_NAME}: certified delta invariants of parameterized curve singularities.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, metavar=_VISIBLE_COMMANDS)

    sub.add_parser("delta", parents=[common], help="certified delta and conductor")
    sub.add_parser("semigroup", parents=[common], help="value semigroup of a single branch")

    p_trunc = sub.add_parser("truncate", parents=[common], help="truncate entries at order N")
    p_trunc.add_argument("--order", type=int, required=True, help="keep degrees <= N")

    p_scan = sub.add_parser("scan", parents=[common], help="scan a family over Spec A")
    p_scan.add_argument("--points", default=None,
                        help="comma-separated points, e.g. s=0,s=1,generic or p=2,generic")
    p_scan.add_argument("--count", type=int, default=None,
                        help=f"number of default points (default {DEFAULT_POINT_COUNT})")
    p_scan.add_argument("--workers", type=int, default=DEFAULT_SCAN_WORKERS,
                        help="threads for row evaluation")
    p_scan.add_argument("--truncate-generic", action="store_true",
                        help="truncate the generic point at 4*(min special delta)-1")
    p_scan.add_argument("--csv", default=None, metavar="PATH", help="also write CSV rows")
    p_scan.add_argument("--chart", default=None, metavar="PATH", help="also write a chart image")
    p_scan.add_argument("--timings", action="store_true", help="include wall times in JSON")

    p_oracle = sub.add_parser("oracle", parents=[common])
    p_oracle.add_argument("--D", dest="precision", type=int, required=True,
                          help="fixed precision for brute-force delta")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def engine_config(args: argparse.Namespace, doc: InputDocument) -> EngineConfig:
    """CLI flags > document options > defaults."""
    opts = doc.options
    d_init = args.dinit if args.dinit is not None else opts.dinit
    d_max = args.dmax if args.dmax is not None else opts.dmax
    if d_max is None:
        d_max = DEFAULT_D_MAX
    if d_init is None:
        # only a ceiling given: start no higher than it
        d_init = min(DEFAULT_D_INIT, d_max)
    config = EngineConfig(
        d_init=d_init,
        d_max=d_max,
        strategy=args.strategy or opts.strategy or DEFAULT_STRATEGY,
    )
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _require_parameterization(doc: InputDocument, command: str) -> Parameterization:
    if not isinstance(doc.value, Parameterization):
        raise DocumentSyntaxError(f"'{command}' needs a 'field' document; use 'scan' for families")
    return doc.value


def _cmd_delta(args: argparse.Namespace, doc: InputDocument) -> int:
    phi = _require_parameterization(doc, "delta")
    outcome = DeltaEngine(engine_config(args, doc)).delta_certified(phi)
    sys.stdout.write(emit_report(outcome, "json" if args.json else "human"))
    return EXIT_OK if isinstance(outcome, DeltaCertificate) else EXIT_UNDECIDED


def _cmd_semigroup(args: argparse.Namespace, doc: InputDocument) -> int:
    phi = _require_parameterization(doc, "semigroup")
    if phi.r > 1:
        raise MultiBranch(f"'semigroup' needs a single branch, document has r={phi.r}")
    engine = DeltaEngine(engine_config(args, doc))
    outcome = engine.delta_certified(phi)
    if not isinstance(outcome, DeltaCertificate):
        sys.stdout.write(emit_report(outcome, "json" if args.json else "human"))
        return EXIT_UNDECIDED
    sys.stdout.write(emit_report(engine.semigroup(outcome), "json" if args.json else "human"))
    return EXIT_OK


def _cmd_truncate(args: argparse.Namespace, doc: InputDocument) -> int:
    value = doc.value
    if isinstance(value, FamilyParameterization):
        truncated = truncate_family(value, args.order)
    else:
        truncated = truncate(value, args.order)
    sys.stdout.write(serialize_document(
        InputDocument(truncated, doc.options, doc.points, doc.name)
    ))
    return EXIT_OK


def _scan_points(args: argparse.Namespace, doc: InputDocument, fam: FamilyParameterization):
    if args.points:
        return [point_from_label(label, fam.ring) for label in args.points.split(",") if label.strip()]
    if args.count is not None:
        return default_points(fam, args.count)
    if doc.points:
        return doc.points
    return default_points(fam, DEFAULT_POINT_COUNT)


def _cmd_scan(args: argparse.Namespace, doc: InputDocument) -> int:
    fam = doc.value
    if not isinstance(fam, FamilyParameterization):
        raise DocumentSyntaxError("'scan' needs a 'ring' document")
    points = _scan_points(args, doc, fam)
    config = ScanConfig(
        engine=engine_config(args, doc),
        workers=args.workers,
        truncate_generic=args.truncate_generic,
    )
    if config.workers > 1:
        worker = ScanWorker(config)
        worker.setup(fam, points)
        report = worker.run()
    else:
        report = FamilyScanner(config).run(fam, points)

    sys.stdout.write(emit_report(report, "json" if args.json else "human", timings=args.timings))
    if args.csv:
        CsvExporter().export_scan(report, args.csv)
    if args.chart:
        ChartExporter().export_scan_chart(report, args.chart)
    if report.audit is not None and not report.audit.passed:
        return EXIT_AUDIT_FAIL
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace, doc: InputDocument) -> int:
    phi = _require_parameterization(doc, "oracle")
    value = brute_delta(phi, args.precision)
    if args.json:
        sys.stdout.write(dumps({"D": args.precision, "delta_bounded": value}))
    else:
        sys.stdout.write(f"delta_bounded at D={args.precision}: {value}\n")
    return EXIT_OK


_COMMANDS = {
    "delta": _cmd_delta,
    "semigroup": _cmd_semigroup,
    "truncate": _cmd_truncate,
    "scan": _cmd_scan,
    "oracle": _cmd_oracle,
}


def cli_main(argv: Sequence[str] | None = None) -> int:
    """Run the CLI and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help / --version exit 0, usage errors are invalid input
        return EXIT_OK if exc.code == 0 else EXIT_INVALID_INPUT
    _configure_logging(args.verbose)

    try:
        doc = load_document(args.file)
        return _COMMANDS[args.command](args, doc)
    except (CurveToolError, ValueError, OSError) as exc:
        logger.debug("Invalid input", exc_info=True)
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID_INPUT


def main() -> None:
    sys.exit(cli_main())
