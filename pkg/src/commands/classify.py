"""Classification of small-degree transitive groups by maol_perm."""

import argparse

from ..census import verify_theorem_1_1_part1, verify_theorem_1_1_part4
from ..config import RunConfig
from ..report import ReportBundle


def register_classify_commands(subparsers) -> None:
    """Register the classify subcommand."""
    parser = subparsers.add_parser(
        "classify",
        help="List transitive groups with small maol_perm and check the solubility threshold",
    )
    parser.add_argument("--max-degree", type=int, default=None, help="Largest degree to census (hard limit 7)")
    parser.add_argument("--threshold", type=int, default=3, help="maol_perm threshold (default: 3)")
    parser.add_argument("--skip-solubility", action="store_true",
                        help="Only run the threshold classification")
    parser.set_defaults(handler=classify)


def classify(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    census = {"workers": settings.workers, "cache_dir": settings.cache_dir}
    bundle = ReportBundle("classify")
    bundle.extend(verify_theorem_1_1_part1(settings.max_degree, args.threshold, **census))
    if not args.skip_solubility:
        bundle.extend(verify_theorem_1_1_part4(settings.max_degree, **census))
    return bundle
