# path: src/infrastructure/cli.py
# description: Command-Line Driving Adapter v1.0.
#
# ARCHITECTURAL ROLE (Primary / Driving Adapter):
# Translates argv into application use cases and their results into
# stdout text or JSON. Adapters are wired here, once per invocation.
#
# Exit codes:
#   0  success
#   1  domain failure (invalid tiling, failed report, precondition, render)
#   2  usage, I/O or parse failure (argparse exits 2 on its own)
# Errors are reported by their stable key, on stdout as JSON with --json
# and on stderr otherwise.

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from src.application.use_cases import (
    AnalyzeTilingUseCase,
    GenerateTilingUseCase,
    HorizonUseCase,
    MinSquaresUseCase,
    RenderTilingUseCase,
    ScaleTilingUseCase,
    ValidateTilingUseCase,
)
from src.domain.exact_numeric import format_rational, parse_rational
from src.domain.exceptions import DocumentParseError, TilingError
from src.domain.ports import GeneratorSpec
from src.infrastructure.analyzer import CoordinateAnalyzer
from src.infrastructure.dirichlet import DirichletEngine
from src.infrastructure.generators import FAMILIES, TilingGenerator
from src.infrastructure.integerizer import DirichletScalingEngine
from src.infrastructure.oracle import BruteForceOracle
from src.infrastructure.serialization import JsonTilingCodec, report_payload
from src.infrastructure.settings import Settings, load_settings
from src.infrastructure.svg_renderer import SvgRenderer
from src.infrastructure.validator import ExactTilingValidator

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {path}: {exc.strerror}") from exc


def _emit(args: argparse.Namespace, payload: Any, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def _verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


# --- Commands -----------------------------------------------------------------------


def cmd_validate(args: argparse.Namespace, settings: Settings) -> int:
    report = ValidateTilingUseCase(JsonTilingCodec(), ExactTilingValidator()).execute(_read(args.file))
    lines = [f"{report.kind} tiling, {report.tile_count} tiles: {_verdict(report.passed)}"]
    lines += [f"  structural: {entry}" for entry in report.structural]
    if report.outside_tiles:
        lines.append(f"  outside region: {report.outside_tiles}")
    if report.overlapping_pairs:
        lines.append(f"  overlapping pairs: {report.overlapping_pairs}")
    if not report.measure_balanced:
        lines.append(
            f"  measure: tiles {format_rational(report.tile_measure)} vs region {format_rational(report.region_measure)}"
        )
    _emit(args, report_payload(report), lines)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _report_line(name: str, report: Any) -> str:
    if name == "coordinates":
        count = report.total
    elif name == "rotation":
        count = len(report.coordinates)
    else:
        count = report.count
    return f"{name}: {count} <= {format_rational(report.bound)} {_verdict(report.passed)}"


def cmd_analyze(args: argparse.Namespace, settings: Settings) -> int:
    use_case = AnalyzeTilingUseCase(JsonTilingCodec(), ExactTilingValidator(), CoordinateAnalyzer())
    reports = use_case.execute(_read(args.file))
    payload = {name: report_payload(report) for name, report in reports.items()}
    _emit(args, payload, [_report_line(name, report) for name, report in reports.items()])
    return EXIT_OK if all(report.passed for report in reports.values()) else EXIT_FAILURE


def cmd_scale(args: argparse.Namespace, settings: Settings) -> int:
    use_case = ScaleTilingUseCase(
        JsonTilingCodec(),
        ExactTilingValidator(),
        DirichletScalingEngine(DirichletEngine(settings), hypercube_strategy=args.strategy),
        BruteForceOracle(settings),
    )
    cert = use_case.execute(_read(args.file), args.method)
    lines = [
        f"pipeline: {cert.pipeline}",
        f"q: {cert.q}",
        f"factor: {format_rational(cert.factor)}",
    ]
    if cert.bound is not None:
        lines.append(f"bound: {cert.bound}")
    lines += [f"note: {note}" for note in cert.notes]
    _emit(args, report_payload(cert), lines)
    return EXIT_OK


def _generator_params(args: argparse.Namespace) -> Dict[str, Any]:
    params = {name: getattr(args, name) for name in ("n", "k", "d", "seed", "depth", "kind")}
    return {name: value for name, value in params.items() if value is not None}


def cmd_generate(args: argparse.Namespace, settings: Settings) -> int:
    spec = GeneratorSpec(args.family, _generator_params(args))
    document = GenerateTilingUseCase(TilingGenerator(settings), JsonTilingCodec()).execute(spec)
    if args.output:
        _write(args.output, document + "\n")
    else:
        print(document)
    return EXIT_OK


def cmd_min_squares(args: argparse.Namespace, settings: Settings) -> int:
    use_case = MinSquaresUseCase(BruteForceOracle(settings), JsonTilingCodec())
    result, audit = use_case.execute(args.width, args.height, args.max_tiles)
    payload = {"result": report_payload(result), "audit": None if audit is None else report_payload(audit)}
    if result.exact:
        lines = [f"{args.width}x{args.height}: {result.count} squares (nodes={result.nodes})"]
    else:
        lines = [f"{args.width}x{args.height}: {result.status} (nodes={result.nodes})"]
    if audit is not None:
        lines.append(f"4^{audit.tiles} >= {max(audit.width, audit.height)}: {_verdict(audit.holds)}")
    if args.emit_witness and result.witness is not None:
        _write(args.emit_witness, use_case.witness_document(result) + "\n")
    _emit(args, payload, lines)
    return EXIT_OK if result.exact else EXIT_FAILURE


def cmd_horizon(args: argparse.Namespace, settings: Settings) -> int:
    ks = HorizonUseCase(BruteForceOracle(settings)).execute(args.width, args.height, args.tiles)
    _emit(args, {"width": args.width, "height": args.height, "tiles": args.tiles, "k": ks}, [" ".join(map(str, ks))])
    return EXIT_OK


def _section(values: Optional[List[str]]):
    if values is None:
        return None
    if len(values) < 2:
        raise _UsageError("--section needs two axes followed by the anchor coordinates")
    try:
        i, j = int(values[0]), int(values[1])
    except ValueError as exc:
        raise _UsageError("--section axes must be integers") from exc
    return i, j, [parse_rational(v) for v in values[2:]]


def cmd_render(args: argparse.Namespace, settings: Settings) -> int:
    section = _section(args.section)
    svg = RenderTilingUseCase(JsonTilingCodec(), ExactTilingValidator(), SvgRenderer(settings)).execute(
        _read(args.file), section
    )
    _write(args.output, svg)
    _emit(args, {"output": args.output, "bytes": len(svg.encode("utf-8"))}, [f"wrote {args.output}"])
    return EXIT_OK


# --- Parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tiling", description="Exact integer rescaling of rational tilings.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", help="check that the tiles partition the region")
    validate.add_argument("file", help="tiling document, '-' for stdin")
    validate.set_defaults(handler=cmd_validate)

    analyze = commands.add_parser("analyze", help="coordinate and cover counts against their bounds")
    analyze.add_argument("file")
    analyze.set_defaults(handler=cmd_analyze)

    scale = commands.add_parser("scale", help="integer rescaling certificate")
    scale.add_argument("file")
    scale.add_argument("--method", choices=("dirichlet", "oracle"), default="dirichlet")
    scale.add_argument("--strategy", choices=("best_pair", "longest"), default="best_pair", help="hypercube axis choice")
    scale.set_defaults(handler=cmd_scale)

    generate = commands.add_parser("generate", help="emit a tiling from a constructive family")
    generate.add_argument("family", choices=FAMILIES)
    generate.add_argument("--n", type=int)
    generate.add_argument("--k", type=int)
    generate.add_argument("--d", type=int)
    generate.add_argument("--seed", type=int)
    generate.add_argument("--depth", type=int)
    generate.add_argument("--kind", choices=("rect", "cuboid", "triangle"), help="random_guillotine family only")
    generate.add_argument("-o", "--output")
    generate.set_defaults(handler=cmd_generate)

    search = commands.add_parser("search", help="brute-force square-count oracles")
    searches = search.add_subparsers(dest="search", required=True)
    min_squares = searches.add_parser("min-squares", help="exact minimal square count of a p x q rectangle")
    min_squares.add_argument("--width", type=int, required=True)
    min_squares.add_argument("--height", type=int, required=True)
    min_squares.add_argument("--max-tiles", type=int)
    min_squares.add_argument("--emit-witness", metavar="FILE")
    min_squares.set_defaults(handler=cmd_min_squares)
    horizon = searches.add_parser("horizon", help="multiples k with k * max(p, q) <= 4^n")
    horizon.add_argument("--width", type=int, required=True)
    horizon.add_argument("--height", type=int, required=True)
    horizon.add_argument("--tiles", type=int, required=True)
    horizon.set_defaults(handler=cmd_horizon)

    render = commands.add_parser("render", help="write an SVG figure")
    render.add_argument("file")
    render.add_argument("-o", "--output", required=True)
    render.add_argument("--section", nargs="+", metavar="V", help="box tilings: axis i, axis j, anchors of the other axes")
    render.set_defaults(handler=cmd_render)
    return parser


def _fail(args: argparse.Namespace, payload: Dict[str, Any], code: int) -> int:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        detail = f" ({payload['details']})" if payload.get("details") else ""
        print(f"{payload['error']}: {payload['message']}{detail}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None, settings: Optional[Settings] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = settings or load_settings()
    try:
        return args.handler(args, settings)
    except DocumentParseError as exc:
        return _fail(args, exc.to_payload(), EXIT_USAGE)
    except TilingError as exc:
        logger.info("CLI_SYS: %s %s", exc.key, exc.details)
        return _fail(args, exc.to_payload(), EXIT_FAILURE)
    except _UsageError as exc:
        return _fail(args, {"error": "error_usage", "message": str(exc), "details": {}}, EXIT_USAGE)
