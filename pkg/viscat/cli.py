"""Command-line front end.

    viscat validate SPEC... [--format text|machine] [--max-len N] [--out PATH]
    viscat analyze SPEC... [--mode set-level|categorical] [--format ...] [--out PATH]
    viscat paths SPEC --from OBJ --to OBJ [--max-len N] [--format ...] [--out PATH]
    viscat roles [--format ...]

Exit codes: 0 pass, 1 validation failures (or disagreeing paths), 2 parse
errors or unknown objects, 3 I/O errors. With several files the exit code is
the highest per-file code; reports are emitted in input order.
"""

import argparse
import asyncio
import logging
import sys
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import orjson

from .config import Config, configure_logging
from .diagram import CheckMode, chain
from .dsl import Model, SpecSource, parse_spec
from .errors import ConfigError, UnknownObject
from .process import CANONICAL_EQUALITIES, OBJECT_ROLES, ROLE_SIGNATURES
from .report import (
    ReportBundle,
    ReportFormat,
    analysis_bundle,
    emit_report,
    paths_bundle,
    report_document,
    validation_bundle,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_IO = 3

Command = Callable[[Model, str], Tuple[ReportBundle, int]]


@dataclass
class FileOutcome:
    origin: str
    code: int
    bundle: Optional[ReportBundle] = None
    messages: List[str] = field(default_factory=list)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="viscat", description="Validate visualization-process specs.")
    parser.add_argument("--config", help="configuration file (default: VISCAT_CONFIG, ./viscat.toml, ~/.config/viscat)")
    commands = parser.add_subparsers(dest="command", required=True)

    def common(sub: argparse.ArgumentParser, many: bool = True) -> None:
        sub.add_argument("specs", nargs="+" if many else 1, metavar="SPEC", help="spec file, or - for stdin")
        sub.add_argument("--format", choices=[f.value for f in ReportFormat], help="report format")
        sub.add_argument("--out", help="write the report to this path instead of stdout")

    validate = commands.add_parser("validate", help="check axioms, commutativity and extremal objects")
    common(validate)
    validate.add_argument("--max-len", type=_positive, dest="max_len", help="longest path compared")
    validate.set_defaults(run=run_validate)

    analyze = commands.add_parser("analyze", help="render profile, chart junk, intension and questions")
    common(analyze)
    analyze.add_argument("--mode", choices=[m.value for m in CheckMode], help="morphism classification mode")
    analyze.set_defaults(run=run_analyze)

    paths = commands.add_parser("paths", help="list paths between two objects and compare them")
    common(paths, many=False)
    paths.add_argument("--from", dest="source", required=True, metavar="OBJ")
    paths.add_argument("--to", dest="target", required=True, metavar="OBJ")
    paths.add_argument("--max-len", type=_positive, dest="max_len", help="longest path listed")
    paths.set_defaults(run=run_paths)

    roles = commands.add_parser("roles", help="print the role signature table")
    roles.add_argument("--format", choices=[f.value for f in ReportFormat], help="output format")
    roles.add_argument("--out", help="write the table to this path instead of stdout")
    roles.set_defaults(run=run_roles)
    return parser


# --- per-file processing ---------------------------------------------------


def _read(path: str) -> SpecSource:
    if path == "-":
        return SpecSource(text=sys.stdin.read(), origin="<stdin>")
    return SpecSource.from_path(path)


def check_file(path: str, command: Command) -> FileOutcome:
    try:
        src = _read(path)
    except (OSError, UnicodeDecodeError) as exc:
        reason = getattr(exc, "strerror", None) or str(exc)
        return FileOutcome(origin=path, code=EXIT_IO, messages=[f"{path}: {reason}"])
    result = parse_spec(src)
    messages = [d.render(src.origin) for d in result.diagnostics]
    if result.model is None:
        return FileOutcome(origin=src.origin, code=EXIT_PARSE, messages=messages)
    try:
        bundle, code = command(result.model, src.origin)
    except UnknownObject as exc:
        return FileOutcome(origin=src.origin, code=EXIT_PARSE, messages=[*messages, f"{src.origin}: {exc}"])
    return FileOutcome(origin=src.origin, code=code, bundle=bundle, messages=messages)


async def check_files(paths: Sequence[str], command: Command) -> List[FileOutcome]:
    """Check files concurrently; outcomes come back in input order."""
    return list(await asyncio.gather(*(asyncio.to_thread(check_file, p, command) for p in paths)))


def _render(bundles: List[ReportBundle], fmt: ReportFormat) -> str:
    if fmt is ReportFormat.Machine and len(bundles) != 1:
        return orjson.dumps([report_document(b) for b in bundles], option=orjson.OPT_INDENT_2).decode() + "\n"
    return "\n".join(emit_report(b, fmt) for b in bundles)


def _write(text: str, out: Optional[str]) -> int:
    if out is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"{out}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _format(args: argparse.Namespace, config: Config) -> ReportFormat:
    return ReportFormat(args.format) if args.format else config.defaults.report.format


def _max_len(args: argparse.Namespace, config: Config) -> Optional[int]:
    return args.max_len if args.max_len is not None else config.defaults.check.resolved_max_len()


def _run_files(args: argparse.Namespace, config: Config, command: Command) -> int:
    if list(args.specs).count("-") > 1:
        print("stdin (-) may be given only once", file=sys.stderr)
        return EXIT_PARSE
    outcomes = asyncio.run(check_files(args.specs, command))
    for outcome in outcomes:
        for message in outcome.messages:
            print(message, file=sys.stderr)
    bundles = [o.bundle for o in outcomes if o.bundle is not None]
    code = max(o.code for o in outcomes)
    if bundles:
        code = max(code, _write(_render(bundles, _format(args, config)), args.out))
    logger.debug("%s: %d file(s), exit %d", args.command, len(outcomes), code)
    return code


# --- commands --------------------------------------------------------------


def run_validate(args: argparse.Namespace, config: Config) -> int:
    max_len = _max_len(args, config)

    def command(model: Model, origin: str) -> Tuple[ReportBundle, int]:
        bundle = validation_bundle(model, max_len, origin)
        return bundle, EXIT_OK if bundle.status == "pass" else EXIT_FAILED

    return _run_files(args, config, command)


def run_analyze(args: argparse.Namespace, config: Config) -> int:
    mode = CheckMode(args.mode) if args.mode else config.defaults.check.mode

    def command(model: Model, origin: str) -> Tuple[ReportBundle, int]:
        return analysis_bundle(model, mode, origin), EXIT_OK

    return _run_files(args, config, command)


def run_paths(args: argparse.Namespace, config: Config) -> int:
    max_len = _max_len(args, config)

    def command(model: Model, origin: str) -> Tuple[ReportBundle, int]:
        bundle = paths_bundle(model, args.source, args.target, max_len, origin)
        return bundle, EXIT_OK if bundle.paths.agree else EXIT_FAILED

    return _run_files(args, config, command)


def role_table() -> dict:
    return {
        "objects": list(OBJECT_ROLES),
        "morphisms": {role: {"dom": dom, "cod": cod} for role, (dom, cod) in ROLE_SIGNATURES.items()},
        "equalities": [f"{chain(tuple(reversed(left)))} = {chain(tuple(reversed(right)))}" for left, right in CANONICAL_EQUALITIES],
    }


def run_roles(args: argparse.Namespace, config: Config) -> int:
    table = role_table()
    if _format(args, config) is ReportFormat.Machine:
        text = orjson.dumps(table, option=orjson.OPT_INDENT_2).decode() + "\n"
    else:
        width = max(len(role) for role in ROLE_SIGNATURES)
        lines = ["object roles: " + ", ".join(table["objects"]), "morphism roles:"]
        lines.extend(f"  {role.ljust(width)}  {dom} -> {cod}" for role, (dom, cod) in ROLE_SIGNATURES.items())
        lines.append("equalities:")
        lines.extend(f"  {label}" for label in table["equalities"])
        text = "\n".join(lines) + "\n"
    return _write(text, args.out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = Config.from_file(args.config) if args.config else Config.load()
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"configuration: {exc}", file=sys.stderr)
        return EXIT_IO
    configure_logging(config)
    return args.run(args, config)


if __name__ == "__main__":
    sys.exit(main())
