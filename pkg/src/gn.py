"""The 2-groups G_n with maol_perm(G_n) = 4.

G_n is generated by x_1, ..., x_m (m = 2^n + 1), a and b, subject to

    a, b central, [x_{2i-1}, x_{2i}] = a, [x_{2i}, x_{2i+1}] = b,
    [x_i, x_j] = 1 for |i - j| > 1,
    x_1^2 = x_m^2 = b, a^2 = b^2 = x_i^2 = 1 otherwise.

Every element has the normal form x_1^e_1 ... x_m^e_m a^s b^t with all
exponents in {0, 1}, stored as an x bit mask plus two bits. Commutators
are central of order 2, so collecting a product reduces to two GF(2)
bilinear forms (crossings of adjacent generators) and a square map
(x_1 and x_m squaring to b).
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from . import config
from .automorphisms import AutSet, GroupMap, automorphism_group, maol_perm
from .constructors import coset_action, regular_representation
from .errors import CapExceededError, DegreeMismatchError, InvalidParameterError
from .group import PermutationGroup, SubgroupHandle
from .perm import Permutation
from .report import VerificationReport, skipped, timed, verdict
from .table import GroupTable

logger = logging.getLogger(__name__)

MAX_N = 3


@dataclass(frozen=True, order=True)
class GnElement:
    n: int
    x: int
    a: int = 0
    b: int = 0

    @property
    def central(self) -> int:
        """The a^s b^t part packed as s + 2t."""
        return self.a | (self.b << 1)

    def __str__(self) -> str:
        return gn_word(self)


def gn_word(element: GnElement) -> str:
    """Normal form as a word, e.g. x1*x3*a; the identity prints as 1."""
    letters = [f"x{i + 1}" for i in range(element.x.bit_length()) if element.x >> i & 1]
    if element.a:
        letters.append("a")
    if element.b:
        letters.append("b")
    return "*".join(letters) or "1"


@dataclass(frozen=True)
class GnGroup:
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_N:
            raise InvalidParameterError(f"G_n is supported for 1 <= n <= {MAX_N}, got n={self.n}")

    @property
    def m(self) -> int:
        """Number of x generators, 2^n + 1."""
        return 2**self.n + 1

    @property
    def order(self) -> int:
        return 2 ** (self.m + 2)

    @cached_property
    def _a_mask(self) -> int:
        # bit k set when x_{k+1}, x_{k+2} commute to a (k even, 0-based)
        return sum(1 << k for k in range(0, self.m - 1, 2))

    @cached_property
    def _b_mask(self) -> int:
        return sum(1 << k for k in range(1, self.m - 1, 2))

    @cached_property
    def _square_mask(self) -> int:
        return 1 | (1 << (self.m - 1))

    def element(self, x: int = 0, a: int = 0, b: int = 0) -> GnElement:
        if not 0 <= x < 1 << self.m:
            raise InvalidParameterError(f"x mask {x} out of range for n={self.n}")
        return GnElement(self.n, x, a & 1, b & 1)

    def identity(self) -> GnElement:
        return GnElement(self.n, 0)

    def x(self, i: int) -> GnElement:
        """Generator x_i, 1-based."""
        if not 1 <= i <= self.m:
            raise InvalidParameterError(f"x_i needs 1 <= i <= {self.m}, got {i}")
        return GnElement(self.n, 1 << (i - 1))

    @property
    def a(self) -> GnElement:
        return GnElement(self.n, 0, 1, 0)

    @property
    def b(self) -> GnElement:
        return GnElement(self.n, 0, 0, 1)

    @property
    def generators(self) -> tuple[GnElement, ...]:
        return tuple(self.x(i) for i in range(1, self.m + 1)) + (self.a, self.b)

    @property
    def h(self) -> GnElement:
        """x_{2^n}, the generator of H_n."""
        return self.x(2**self.n)

    def elements(self) -> Iterator[GnElement]:
        for x in range(1 << self.m):
            for a, b in itertools.product((0, 1), repeat=2):
                yield GnElement(self.n, x, a, b)

    def _check(self, *elements: GnElement) -> None:
        for e in elements:
            if e.n != self.n:
                raise DegreeMismatchError(f"element of G_{e.n} used in G_{self.n}")

    def multiply(self, u: GnElement, v: GnElement) -> GnElement:
        self._check(u, v)
        # moving x_j of v left past x_{j+1} of u picks up [x_{j+1}, x_j]
        crossing = (u.x >> 1) & v.x
        a = u.a ^ v.a ^ (bin(crossing & self._a_mask).count("1") & 1)
        b = u.b ^ v.b ^ (bin(crossing & self._b_mask).count("1") & 1)
        b ^= bin(u.x & v.x & self._square_mask).count("1") & 1
        return GnElement(self.n, u.x ^ v.x, a, b)

    def inverse(self, u: GnElement) -> GnElement:
        sq = self.multiply(GnElement(self.n, u.x), GnElement(self.n, u.x))
        return GnElement(self.n, u.x, u.a ^ sq.a, u.b ^ sq.b)

    def commutator(self, u: GnElement, v: GnElement) -> GnElement:
        """[u, v] = u^-1 v^-1 u v."""
        left = self.multiply(self.inverse(u), self.inverse(v))
        return self.multiply(left, self.multiply(u, v))

    def conjugate(self, u: GnElement, s: GnElement) -> GnElement:
        """u^s = s^-1 u s."""
        return self.multiply(self.multiply(self.inverse(s), u), s)

    def element_order(self, u: GnElement) -> int:
        k, acc = 1, u
        while acc != self.identity():
            acc = self.multiply(acc, u)
            k += 1
        return k

    def central_element(self, packed: int) -> GnElement:
        return GnElement(self.n, 0, packed & 1, packed >> 1 & 1)

    def subgroup(self, generators: list[GnElement]) -> frozenset[GnElement]:
        members = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            fresh = []
            for y in frontier:
                for g in generators:
                    z = self.multiply(y, g)
                    if z not in members:
                        members.add(z)
                        fresh.append(z)
            frontier = fresh
        return frozenset(members)

    @cached_property
    def table(self) -> GroupTable:
        return gn_table(self)


def gn_group(n: int) -> GnGroup:
    return GnGroup(n)


def gn_multiply(group: GnGroup, u: GnElement, v: GnElement) -> GnElement:
    return group.multiply(u, v)


def gn_centre(group: GnGroup) -> frozenset[GnElement]:
    """Elements commuting with every generator."""
    gens = group.generators
    return frozenset(
        u for u in group.elements() if all(group.multiply(u, g) == group.multiply(g, u) for g in gens)
    )


def gn_derived(group: GnGroup) -> frozenset[GnElement]:
    """G_n' as the subgroup spanned by generator commutators; these are central, so no normal closure is needed."""
    gens = group.generators
    comms = [group.commutator(g, h) for g, h in itertools.combinations(gens, 2)]
    return group.subgroup(comms)


def _cyclic(group: GnGroup, g: GnElement) -> frozenset[GnElement]:
    return group.subgroup([g])


def gn_stabilizer_class(group: GnGroup) -> frozenset[frozenset[GnElement]]:
    """The G_n-conjugates of H_n = <x_{2^n}>."""
    h = group.h
    return frozenset(_cyclic(group, group.conjugate(h, s)) for s in group.elements())


def gn_expected_stabilizer_class(group: GnGroup) -> frozenset[frozenset[GnElement]]:
    """{<h>, <ha>, <hb>, <hab>} for h = x_{2^n}."""
    h = group.h
    return frozenset(_cyclic(group, group.multiply(h, group.central_element(z))) for z in range(4))


def gn_central_stabilizer_class(group: GnGroup) -> frozenset[frozenset[GnElement]]:
    """H_n under Aut_cent(G_n): H_n^{alpha_f} = <x_{2^n} f(x_{2^n})> for every central hom f."""
    return frozenset(_cyclic(group, group.multiply(group.h, z)) for z in sorted(gn_centre(group)))


def _apply_generator_images(group: GnGroup, images: dict[int, GnElement], u: GnElement) -> GnElement:
    """Image of u under the endomorphism fixing a, b and sending x_i to images[i] (default x_i)."""
    acc = group.identity()
    for i in range(group.m):
        if u.x >> i & 1:
            acc = group.multiply(acc, images.get(i + 1, group.x(i + 1)))
    return group.multiply(acc, GnElement(group.n, 0, u.a, u.b))


def gn_table(group: GnGroup, cap: int | None = None) -> GroupTable:
    """Cayley table of G_n, generated by the x_i."""
    cap = config.TABLE_CAP if cap is None else cap
    if group.order > cap:
        raise CapExceededError(f"Cayley table of G_{group.n}", group.order, cap)
    gens = [group.x(i) for i in range(1, group.m + 1)]
    return GroupTable.from_generators(group.identity(), gens, group.multiply, cap, label=f"G_{group.n}")


def gn_alpha_n(group: GnGroup) -> GroupMap:
    """alpha_n: x_{2^n} -> x_{2^n} x_{2^n+1}, every other generator fixed, as a verified map on the table."""
    table = group.table
    k = 2**group.n
    images = {k: group.multiply(group.x(k), group.x(k + 1))}
    arr = [table.index[_apply_generator_images(group, images, u)] for u in table.elements]
    return GroupMap.from_images(table, arr, label=f"alpha_{group.n}")


def gn_alpha_moves_stabilizer(group: GnGroup) -> bool:
    """Whether H_n^{alpha_n} falls outside the stabilizer class, so alpha_n is not in Aut_perm."""
    alpha = gn_alpha_n(group)
    table = group.table
    image = frozenset(table.elements[alpha(table.index[u])] for u in _cyclic(group, group.h))
    return image not in gn_stabilizer_class(group)


def central_hom_columns(group: GnGroup, filtered: bool = True) -> list[frozenset[int]]:
    """Allowed values of f(x_i), packed as a + 2b, for central homs f: G_n -> Z(G_n).

    f kills a and b (a is a commutator, b = x_1^2 and Z(G_n) has exponent 2),
    so each f(x_i) ranges freely over Z(G_n). With filtered=True the column
    of x_{2^n} keeps only values z with <x_{2^n} z> in the stabilizer class.
    """
    columns = [frozenset(range(4)) for _ in range(group.m)]
    if filtered:
        allowed = gn_stabilizer_class(group)
        k = 2**group.n - 1
        columns[k] = frozenset(
            z for z in range(4) if _cyclic(group, group.multiply(group.h, group.central_element(z))) in allowed
        )
    return columns


def _sumset(left: int, right: int) -> int:
    """Sumset of two subsets of (Z/2)^2 encoded as 4-bit masks."""
    out = 0
    for s in range(4):
        if left >> s & 1:
            for t in range(4):
                if right >> t & 1:
                    out |= 1 << (s ^ t)
    return out


def gn_orbit_length(group: GnGroup, u: GnElement, columns: list[frozenset[int]] | None = None) -> int:
    """|u^A| for A the central automorphisms whose homs take values in the given columns.

    u^{alpha_f} = u f(u) and f(u) = sum of f(x_i) over the x-support of u,
    so the orbit is u times the sumset of the supported columns.
    """
    columns = central_hom_columns(group) if columns is None else columns
    values = 1
    for i in range(group.m):
        if u.x >> i & 1:
            values = _sumset(values, sum(1 << z for z in columns[i]))
    return bin(values).count("1")


def gn_orbit_lengths(group: GnGroup, filtered: bool = True) -> Counter:
    columns = central_hom_columns(group, filtered)
    return Counter(gn_orbit_length(group, u, columns) for u in group.elements())


def gn_maol_perm(n: int) -> int:
    """maol_perm(G_n), using Aut_perm(G_n) = filtered Aut_cent(G_n)."""
    group = gn_group(n)
    lengths = gn_orbit_lengths(group, filtered=True)
    value = max(lengths)
    logger.info(f"G_{n}: orbit lengths {dict(sorted(lengths.items()))}, maol_perm={value}")
    return value


def gn_central_automorphisms(group: GnGroup, filtered: bool = False) -> AutSet:
    """Aut_cent(G_n) as explicit maps on the Cayley table, one per choice of column values."""
    table = group.table
    columns = central_hom_columns(group, filtered)
    count = np.prod([len(c) for c in columns])
    if count > config.AUTSET_CAP:
        raise CapExceededError(f"central automorphisms of G_{group.n}", int(count), config.AUTSET_CAP)
    maps = []
    for values in itertools.product(*(sorted(c) for c in columns)):
        images = {
            i + 1: group.multiply(group.x(i + 1), group.central_element(z)) for i, z in enumerate(values)
        }
        maps.append([table.index[_apply_generator_images(group, images, u)] for u in table.elements])
    return AutSet(table, np.asarray(maps, dtype=table.mul.dtype), label=f"Aut_cent(G_{group.n})")


def gn_explicit_orbit_lengths(group: GnGroup, filtered: bool = False) -> Counter:
    """Element counts per orbit length, read off the orbits of gn_central_automorphisms.

    Same shape as gn_orbit_lengths, which gets the lengths from column sumsets instead.
    """
    orbits = gn_central_automorphisms(group, filtered).orbit_lengths()
    return Counter({length: length * count for length, count in orbits.items()})


def _by_length(lengths: Counter) -> dict[str, int]:
    return {str(k): v for k, v in sorted(lengths.items())}


def gn_permutation_group(group: GnGroup) -> PermutationGroup:
    """G_n acting on the right cosets of H_n, a faithful transitive group of degree |G_n| / 2."""
    table = group.table
    regular = regular_representation(table, name=f"G_{group.n} reg")
    h = Permutation(tuple(int(v) for v in table.mul[:, table.index[group.h]]))
    action = coset_action(regular, SubgroupHandle.of(regular, [h]), name=f"G_{group.n} on H_{group.n}")
    return action.group


def _words(elements) -> list[str]:
    return sorted(gn_word(u) for u in elements)


def _subgroup_words(subgroups) -> list[list[str]]:
    return sorted(_words(s) for s in subgroups)


def verify_gn(n: int) -> list[VerificationReport]:
    """The structural facts about G_n and maol_perm(G_n) = 4, as reports.

    Args:
        n: Index of the group, 1 <= n <= MAX_N.

    Returns:
        One report per fact. Checks that need the explicit automorphism set or
        the permutation representation are skipped when they exceed the caps.

    Raises:
        InvalidParameterError: If n is out of range.
    """
    group = gn_group(n)
    label = f"G_{n}"
    z = [group.central_element(k) for k in range(4)]
    reports = [
        verdict(f"|{label}|", 2 ** (2**n + 3), group.table.order),
        verdict(f"centre of {label}", _words(z), _words(gn_centre(group))),
        verdict(f"derived subgroup of {label}", _words(z), _words(gn_derived(group))),
        verdict(
            f"conjugates of H_{n}",
            _subgroup_words(gn_expected_stabilizer_class(group)),
            _subgroup_words(gn_stabilizer_class(group)),
        ),
        verdict(
            f"H_{n} under central automorphisms",
            _subgroup_words(gn_stabilizer_class(group)),
            _subgroup_words(gn_central_stabilizer_class(group)),
        ),
    ]

    alpha = gn_alpha_n(group)
    table = group.table
    fixed = alpha.fixes([table.index[group.a], table.index[group.b]])
    reports.append(verdict(
        f"alpha_{n} is an automorphism fixing a, b and moving H_{n} off its class",
        [True, True, True],
        [alpha.is_automorphism(), fixed, gn_alpha_moves_stabilizer(group)],
        images=alpha.describe(),
    ))

    # every u outside the centre has the full coset uZ as its Aut_cent orbit
    lengths = gn_orbit_lengths(group, filtered=False)
    reports.append(verdict(
        f"Aut_cent({label}) transitive on nontrivial cosets of the centre",
        {"1": 4, "4": group.order - 4},
        _by_length(lengths),
    ))
    if n <= 2:
        for filtered in (False, True):
            reports.append(verdict(
                f"{'Aut_perm' if filtered else 'Aut_cent'}({label}) orbit lengths from explicit maps",
                _by_length(gn_orbit_lengths(group, filtered)),
                _by_length(gn_explicit_orbit_lengths(group, filtered)),
            ))
    else:
        reports.append(skipped(f"Aut_cent({label}) orbit lengths from explicit maps",
                               f"{4 ** group.m} maps exceed the explicit automorphism set cap"))

    with timed(f"maol_perm({label})") as t:
        value = gn_maol_perm(n)
    reports.append(verdict(f"maol_perm({label}) = 4", 4, value, wall_time=t.elapsed,
                           orbit_lengths=_by_length(gn_orbit_lengths(group))))

    if n == 1:
        reports.extend(_verify_g1_pipeline(group))
    else:
        reports.append(skipped(f"{label} against the generic pipeline", "coset action only built for n = 1"))
    return reports


def _verify_g1_pipeline(group: GnGroup) -> list[VerificationReport]:
    """Aut(G_1) by brute force, and maol_perm through the degree-16 coset action."""
    table = group.table
    with timed("Aut(G_1)") as t:
        full = automorphism_group(table)
        cent = gn_central_automorphisms(group)
        alpha = gn_alpha_n(group)
        twisted = AutSet(table, [alpha.images[row] for row in cent.matrix])
        union = AutSet(table, list(cent.matrix) + list(twisted.matrix))
    aut_report = verdict(
        "Aut(G_1) = Aut_cent(G_1) u Aut_cent(G_1) alpha_1",
        [len(full), True],
        [len(union), union.same_maps(full)],
        wall_time=t.elapsed,
    )
    with timed("G_1 on cosets of H_1") as t:
        action = gn_permutation_group(group)
        value = maol_perm(action)
    pipeline_report = verdict(
        "maol_perm(G_1) through the degree-16 coset action",
        [16, 4],
        [action.degree, value],
        wall_time=t.elapsed,
    )
    return [aut_report, pipeline_report]
