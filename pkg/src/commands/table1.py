"""table1: maol_perm of the eleven insoluble (G, G_w) pairs."""

import argparse

from ..census import verify_table1
from ..config import RunConfig
from ..report import ReportBundle

TABLE1_COLUMNS = (
    ("row", "check"),
    ("G", "structure"),
    ("G_w", "stabilizer"),
    ("|G|", "group_order"),
    ("|G_w|", "stabilizer_order"),
    ("degree", "degree"),
    ("|Aut_perm|", "aut_perm_order"),
    ("expected", "expected"),
    ("maol_perm", "computed"),
    ("status", "status"),
)


def register_table1_commands(subparsers) -> None:
    """Register the table1 subcommand."""
    parser = subparsers.add_parser(
        "table1",
        help="Recompute maol_perm for the eleven rows of the insoluble table",
        description="Build each (A x Alt(5), G_w) coset action and compare maol_perm with the printed value.",
    )
    parser.add_argument("--rows", type=int, nargs="+", default=None, metavar="ROW",
                        help="Rows to check (default: all 11)")
    parser.set_defaults(handler=table1)


def table1(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    bundle = ReportBundle("table1", columns=TABLE1_COLUMNS)
    bundle.extend(verify_table1(args.rows))
    return bundle
