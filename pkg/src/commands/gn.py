"""The G_n family."""

import argparse

from ..config import RunConfig
from ..gn import MAX_N, verify_gn
from ..report import ReportBundle


def register_gn_commands(subparsers) -> None:
    """Register the gn subcommand."""
    parser = subparsers.add_parser("gn", help="Verify maol_perm(G_n) = 4 and the structure of G_n")
    parser.add_argument("--n", type=int, nargs="+", default=[1], help=f"Values of n in 1..{MAX_N} (default: 1)")
    parser.set_defaults(handler=gn)


def gn(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    bundle = ReportBundle("gn")
    for n in args.n:
        bundle.extend(verify_gn(n))
    return bundle
