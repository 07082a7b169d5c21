"""Command-line entry point: `maolperm <subcommand>` or `python -m src.cli <subcommand>`.

Every subcommand returns a ReportBundle. Exit codes: 0 when every check
passed (or was skipped), 1 when any check failed, 2 on usage or input errors.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import config
from .commands import (
    register_bounds_commands,
    register_classify_commands,
    register_gn_commands,
    register_lemma_commands,
    register_maolperm_commands,
    register_selftest_commands,
    register_table1_commands,
)
from .config import RunConfig
from .constructors import parse_group_spec
from .errors import MaolpermError
from .report import ReportBundle

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

__all__ = ["build_parser", "main", "parse_group_spec", "run"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit code."""

    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="maolperm",
        description="Verify orbit-length facts about transitive permutation groups.",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text", help="Report format (default: text)")
    parser.add_argument("--output", type=Path, default=None, help="Write the report here instead of stdout")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help=f"Logging level (default: {config.LOG_LEVEL})")
    parser.add_argument("--workers", type=int, default=config.WORKERS, help="Worker processes for census statistics")
    parser.add_argument("--cache-dir", type=Path, default=Path(config.CACHE_DIR) if config.CACHE_DIR else None,
                        help="Directory for the census cache")
    parser.add_argument("--element-cap", type=int, default=config.ELEMENT_CAP)
    parser.add_argument("--table-cap", type=int, default=config.TABLE_CAP)
    parser.add_argument("--aut-order-cap", type=int, default=config.AUT_ORDER_CAP)
    parser.add_argument("--autset-cap", type=int, default=config.AUTSET_CAP)

    subparsers = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    register_table1_commands(subparsers)
    register_classify_commands(subparsers)
    register_gn_commands(subparsers)
    register_bounds_commands(subparsers)
    register_lemma_commands(subparsers)
    register_maolperm_commands(subparsers)
    register_selftest_commands(subparsers)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        element_cap=args.element_cap,
        table_cap=args.table_cap,
        aut_order_cap=args.aut_order_cap,
        autset_cap=args.autset_cap,
        max_degree=getattr(args, "max_degree", None) or config.MAX_DEGREE,
        output_format=args.format,
        output_path=args.output,
        workers=args.workers,
        cache_dir=args.cache_dir,
    ).clamped()


def _emit(text: str, path: Path | None) -> None:
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n")
        logger.info(f"report written to {path}")


def _error_payload(message: str) -> dict:
    return {"success": False, "error": message, "isError": True}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE

    logging.basicConfig(level=args.log_level.upper(), format="%(levelname)s %(name)s: %(message)s")
    settings = run_config(args)
    config.install(settings)
    logger.info(f"starting {settings.subcommand}")

    try:
        bundle: ReportBundle = args.handler(args, settings)
    except MaolpermError as e:
        logger.error(f"{settings.subcommand} failed: {e.message}")
        payload = _error_payload(e.message)
        if settings.output_format == "json":
            _emit(json.dumps(payload, indent=2), settings.output_path)
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return EXIT_USAGE

    _emit(bundle.to_json() if settings.output_format == "json" else bundle.to_text(), settings.output_path)
    logger.info(f"finished {settings.subcommand}: {bundle.counts}")
    return EXIT_OK if bundle.success else EXIT_FAILED


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
