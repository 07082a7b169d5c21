"""maol_perm of a group given on the command line."""

import argparse
from pathlib import Path

from ..automorphisms import aut_perm
from ..config import RunConfig
from ..constructors import parse_group_spec
from ..errors import GroupSpecError, NotTransitiveError
from ..report import ReportBundle, VerificationReport, timed, verdict


def register_maolperm_commands(subparsers) -> None:
    """Register the maolperm subcommand."""
    parser = subparsers.add_parser(
        "maolperm",
        help="Compute maol_perm of a transitive group",
        description='Group spec: either "degree=<n>; gens=<perm>,<perm>,..." with 1-based cycles, '
                    'e.g. "degree=4; gens=(1,2,3,4),(1,3)", or a JSON object such as '
                    '\'{"kind": "dihedral-natural", "n": 4}\'.',
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--group", help="Group spec, text or JSON")
    source.add_argument("--group-file", type=Path, help="File holding a group spec, text or JSON")
    parser.add_argument("--expect", type=int, default=None, help="Expected value; the report fails on mismatch")
    parser.set_defaults(handler=maolperm)


def _spec_text(args: argparse.Namespace) -> tuple[str, str]:
    """The group spec text and the label used in the check name."""
    if args.group is not None:
        return args.group, args.group
    try:
        return args.group_file.read_text(), str(args.group_file)
    except OSError as e:
        raise GroupSpecError(f"could not read group spec file {args.group_file}: {e.strerror}") from None


def maolperm(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    text, label = _spec_text(args)
    group = parse_group_spec(text)
    if not group.is_transitive():
        raise NotTransitiveError(f"group {label!r} is not transitive; maol_perm is only defined for transitive groups")
    with timed("maolperm") as t:
        auts = aut_perm(group)
        value = auts.max_orbit_length()
    details = {
        "degree": group.degree,
        "order": group.order(),
        "aut_perm_order": len(auts),
        "orbit_lengths": {str(k): v for k, v in sorted(auts.orbit_lengths().items())},
    }
    check = f"maol_perm({label})"
    if args.expect is None:
        report = VerificationReport(check, "pass", None, value, {}, t.elapsed, details)
    else:
        report = verdict(check, args.expect, value, wall_time=t.elapsed, **details)
    return ReportBundle("maolperm", [report])
