"""Bound functions and the bound inequalities on the group corpus."""

import argparse

from ..bounds import bound_spot_values, verify_bounds_corpus
from ..config import RunConfig
from ..report import ReportBundle


def register_bounds_commands(subparsers) -> None:
    """Register the bounds subcommand."""
    parser = subparsers.add_parser("bounds", help="Evaluate the bound functions and check them on groups")
    parser.add_argument("--corpus", action="store_true",
                        help="Also check every bound on the census, table1 groups and G_1")
    parser.add_argument("--max-degree", type=int, default=None, help="Largest census degree in the corpus")
    parser.add_argument("--no-table1", action="store_true", help="Leave the table1 groups out of the corpus")
    parser.set_defaults(handler=bounds)


def bounds(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    bundle = ReportBundle("bounds")
    bundle.extend(bound_spot_values())
    if args.corpus:
        bundle.extend(verify_bounds_corpus(
            settings.max_degree,
            table1=not args.no_table1,
            workers=settings.workers,
            cache_dir=settings.cache_dir,
        ))
    return bundle
