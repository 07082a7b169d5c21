"""Run the documented examples, one report each."""

import argparse
import logging
from typing import Any, Callable

from ..abelian import AbelianGroup, aut_centralizer_is_trivial, euler_phi, root_adapted_basis_exists
from ..automorphisms import aut_perm, automorphism_group, maol_perm
from ..census import verify_table1, verify_theorem_1_1_part1, verify_theorem_1_1_part4
from ..config import RunConfig
from ..constructors import (
    abelian_regular,
    alternating_natural,
    cyclic_regular,
    dihedral_natural,
    direct_product,
    parse_group_spec,
    symmetric_natural,
    table1_pair,
)
from ..errors import MaolpermError
from ..gn import gn_group, verify_gn
from ..group import PermutationGroup, core_is_trivial, point_stabilizer, subgroup_transporter
from ..report import ReportBundle, VerificationReport, timed, verdict

logger = logging.getLogger(__name__)


def register_selftest_commands(subparsers) -> None:
    """Register the selftest subcommand."""
    parser = subparsers.add_parser("selftest", help="Check every documented example")
    parser.add_argument("--full", action="store_true",
                        help="Also run all table1 rows and the degree-6 classification")
    parser.set_defaults(handler=selftest)


def _d8() -> PermutationGroup:
    return dihedral_natural(4)


def _table1_shape(row: int) -> list[int]:
    pair = table1_pair(row)
    return [pair.group.order(), pair.stabilizer.order(), pair.group.degree]


def _remark_counterexample(p: int) -> bool:
    a = AbelianGroup.p_group(p, [3, 1])
    return root_adapted_basis_exists(a, a.span([(p, 1)]))


EXAMPLES: list[tuple[str, Any, Callable[[], Any]]] = [
    ("D8 <= Sym(4) has order 8", 8, lambda: _d8().order()),
    ("D8 is transitive, not regular", [True, False], lambda: [_d8().is_transitive(), _d8().is_regular()]),
    ("point stabilizer of D8 is core-free", True, lambda: core_is_trivial(_d8(), point_stabilizer(_d8(), 0))),
    (
        "point stabilizers of D8 are conjugate",
        True,
        lambda: subgroup_transporter(_d8(), point_stabilizer(_d8(), 0), point_stabilizer(_d8(), 1)) is not None,
    ),
    (
        "Z/6 regular is transitive and regular of order 6",
        [True, True, 6],
        lambda: [cyclic_regular(6).is_transitive(), cyclic_regular(6).is_regular(), cyclic_regular(6).order()],
    ),
    (
        "(Z/2)^2 regular has degree 4",
        [4, True],
        lambda: [abelian_regular([2, 2]).degree, abelian_regular([2, 2]).is_regular()],
    ),
    ("D6 natural is Sym(3)", True, lambda: dihedral_natural(3).same_group(symmetric_natural(3))),
    (
        "Z/3 x Alt(5) has order 180",
        180,
        lambda: direct_product(cyclic_regular(3), alternating_natural(5)).group.order(),
    ),
    (
        "(Z/2)^2 x Alt(5) has order 240",
        240,
        lambda: direct_product(abelian_regular([2, 2]), alternating_natural(5)).group.order(),
    ),
    ("row 1: |G|, |G_w|, degree", [180, 3, 60], lambda: _table1_shape(1)),
    ("row 9: |G|, |G_w|, degree", [120, 10, 12], lambda: _table1_shape(9)),
    ("row 11: |G|, |G_w|, degree", [240, 4, 60], lambda: _table1_shape(11)),
    (
        "C_Aut(Z/6)(Z/3) is trivial",
        True,
        lambda: aut_centralizer_is_trivial(AbelianGroup.from_invariants([6]), [(0, 0), (0, 1), (0, 2)]).trivial,
    ),
    ("phi(9) = 6", 6, lambda: euler_phi(9)),
    ("Z/8 x Z/2: no root-adapted basis for <2a_1 + a_2>", False, lambda: _remark_counterexample(2)),
    ("Z/27 x Z/3: no root-adapted basis for <3a_1 + a_2>", False, lambda: _remark_counterexample(3)),
    (
        "regular Z/4: Aut_perm = Aut",
        True,
        lambda: aut_perm(cyclic_regular(4)).same_maps(automorphism_group(cyclic_regular(4).table())),
    ),
    ("maol_perm(D8) = 2", 2, lambda: maol_perm(_d8())),
    ("maol_perm(Z/2 regular) = 1", 1, lambda: maol_perm(cyclic_regular(2))),
    ("maol_perm(Alt(5) natural) = 24", 24, lambda: maol_perm(alternating_natural(5))),
    ("maol_perm of row 5 = 80", 80, lambda: maol_perm(table1_pair(5).group)),
    ("x_1 * x_1 = b in G_1", True, lambda: (g := gn_group(1)).multiply(g.x(1), g.x(1)) == g.b),
    (
        "x_2 x_1 = x_1 x_2 a in G_1",
        True,
        lambda: (g := gn_group(1)).multiply(g.x(2), g.x(1)) == g.multiply(g.multiply(g.x(1), g.x(2)), g.a),
    ),
    ("|G_2| = 128", 128, lambda: gn_group(2).order),
    (
        "parse D8 from its group spec",
        True,
        lambda: parse_group_spec("degree=4; gens=(1,2,3,4),(1,3)").same_group(_d8()),
    ),
]


def _run_example(name: str, expected: Any, thunk: Callable[[], Any]) -> VerificationReport:
    computed, witness = None, None
    with timed(name) as t:
        try:
            computed = thunk()
        except MaolpermError as e:
            logger.warning(f"{name}: {e.message}")
            witness = {"error": e.message}
    return verdict(name, expected, computed, witness, t.elapsed)


def selftest(args: argparse.Namespace, settings: RunConfig) -> ReportBundle:
    bundle = ReportBundle("selftest")
    for name, expected, thunk in EXAMPLES:
        bundle.add(_run_example(name, expected, thunk))
    bundle.extend(verify_gn(1))
    bundle.extend(r for r in verify_gn(2) if r.check.startswith("maol_perm"))
    census = {"workers": settings.workers, "cache_dir": settings.cache_dir}
    if args.full:
        bundle.extend(verify_table1())
        bundle.extend(verify_theorem_1_1_part1(6, 3, **census))
        bundle.extend(verify_theorem_1_1_part4(6, **census))
    else:
        bundle.extend(verify_table1([3, 7, 11]))
        bundle.extend(verify_theorem_1_1_part1(min(settings.max_degree, 5), 3, **census))
    return bundle
