"""Property suites for the lemmas on regular groups, normalisers and abelian p-groups."""

import argparse

from ..census import (
    verify_adapted_basis_lemma,
    verify_centralizer_lemma,
    verify_maol_bounds,
    verify_normaliser_lemma,
    verify_regular_lemmas,
)
from ..config import RunConfig
from ..report import ReportBundle


def register_lemma_commands(subparsers) -> None:
    """Register the lemmas subcommand."""
    parser = subparsers.add_parser("lemmas", help="Run the lemma property suites")
    parser.add_argument("--max-degree", type=int, default=None, help="Largest census degree used")
    parser.add_argument("--max-order", type=int, default=24, help="Largest regular group order (default: 24)")
    parser.add_argument("--abelian-max-order", type=int, default=64,
                        help="Largest abelian group for the centraliser criterion (default: 64)")
    parser.add_argument("--p-group-max-order", type=int, default=729,
                        help="Largest abelian p-group for adapted bases (default: 729)")
    parser.set_defaults(handler=lemmas)


def lemmas(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    census = {"workers": settings.workers, "cache_dir": settings.cache_dir}
    bundle = ReportBundle("lemmas")
    bundle.extend(verify_regular_lemmas(args.max_order, settings.max_degree, **census))
    bundle.extend(verify_normaliser_lemma(settings.max_degree, **census))
    bundle.extend(verify_maol_bounds(settings.max_degree, **census))
    bundle.extend(verify_centralizer_lemma(args.abelian_max_order))
    bundle.extend(verify_adapted_basis_lemma(args.p_group_max_order))
    return bundle
