"""Permutation groups given by generators.

A PermutationGroup builds its stabilizer chain on first use (Schreier-Sims,
base points chosen as the smallest moved point) and caches it. Everything
that enumerates elements checks an explicit cap first.
"""

from __future__ import annotations

import logging
import math
import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import config
from .errors import CapExceededError, DegreeMismatchError, DomainError, NotSubgroupError
from .perm import Permutation, commutator, compose, conjugate
from .table import GroupTable

logger = logging.getLogger(__name__)

Images = tuple[int, ...]


def _mul(p: Images, q: Images) -> Images:
    return tuple(q[i] for i in p)


def _inv(p: Images) -> Images:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


@dataclass(frozen=True)
class ChainLevel:
    """One level of a stabilizer chain.

    transversal maps each orbit point q to u with point^u = q.
    """

    point: int
    orbit: tuple[int, ...]
    transversal: dict[int, Permutation]
    generators: tuple[Permutation, ...]


@dataclass(frozen=True)
class StabilizerChain:
    """Base and strong generating set with basic orbits and transversals."""

    degree: int
    levels: tuple[ChainLevel, ...]
    _inverse_transversals: tuple[dict[int, Images], ...] = field(repr=False, default=())

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(level.point for level in self.levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return self.levels[0].generators if self.levels else ()

    def order(self) -> int:
        return math.prod(len(level.orbit) for level in self.levels)

    def sift(self, p: Permutation) -> tuple[Permutation, int]:
        """Strip p through the chain; returns the residue and the level where it stopped."""
        g = p.images
        for depth, (level, inverses) in enumerate(zip(self.levels, self._inverse_transversals)):
            q = g[level.point]
            u_inv = inverses.get(q)
            if u_inv is None:
                return Permutation(g), depth
            g = _mul(g, u_inv)
        return Permutation(g), len(self.levels)

    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            return False
        residue, _ = self.sift(p)
        return residue.is_identity()

    def elements(self) -> Iterator[Permutation]:
        """Every group element exactly once, as u_k * ... * u_0."""
        reps = [tuple(u.images for u in level.transversal.values()) for level in self.levels]

        def walk(depth: int, acc: Images) -> Iterator[Images]:
            if depth < 0:
                yield acc
                return
            for u in reps[depth]:
                yield from walk(depth - 1, _mul(acc, u))

        for images in walk(len(reps) - 1, tuple(range(self.degree))):
            yield Permutation(images)


def _orbit_transversal(point: int, gens: Sequence[Images], degree: int) -> dict[int, Images]:
    transversal: dict[int, Images] = {point: tuple(range(degree))}
    queue = [point]
    for p in queue:
        up = transversal[p]
        for s in gens:
            q = s[p]
            if q not in transversal:
                transversal[q] = _mul(up, s)
                queue.append(q)
    return transversal


def _first_moved(g: Images) -> int:
    for i, x in enumerate(g):
        if i != x:
            return i
    raise ValueError("identity has no moved point")


def schreier_sims(
    degree: int,
    generators: Iterable[Permutation],
    initial_base: Sequence[int] = (),
) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Levels are completed bottom-up; a Schreier generator that fails to sift
    becomes a new strong generator and processing restarts at its level.
    """
    ident = tuple(range(degree))
    gens = [g.images for g in generators]
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    base: list[int] = list(initial_base)
    strong: list[Images] = []
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g))
        strong.append(g)

    cache: list[tuple[dict[int, Images], dict[int, Images]] | None] = [None] * len(base)

    def level_gens(i: int) -> list[Images]:
        fixed = base[:i]
        return [s for s in strong if all(s[b] == b for b in fixed)]

    def ensure(i: int) -> tuple[dict[int, Images], dict[int, Images]]:
        entry = cache[i]
        if entry is None:
            trans = _orbit_transversal(base[i], level_gens(i), degree)
            entry = (trans, {q: _inv(u) for q, u in trans.items()})
            cache[i] = entry
        return entry

    def sift(g: Images, start: int) -> tuple[Images, int]:
        for depth in range(start, len(base)):
            _, inverses = ensure(depth)
            u_inv = inverses.get(g[base[depth]])
            if u_inv is None:
                return g, depth
            g = _mul(g, u_inv)
        return g, len(base)

    i = len(base) - 1
    while i >= 0:
        trans, inverses = ensure(i)
        gens_i = level_gens(i)
        restarted = False
        for p, up in list(trans.items()):
            for s in gens_i:
                schreier_gen = _mul(_mul(up, s), inverses[s[p]])
                if schreier_gen == ident:
                    continue
                residue, j = sift(schreier_gen, i + 1)
                if residue == ident:
                    continue
                if j == len(base):
                    base.append(_first_moved(residue))
                    cache.append(None)
                strong.append(residue)
                for stale in range(j + 1):
                    cache[stale] = None
                i = j
                restarted = True
                break
            if restarted:
                break
        if not restarted:
            i -= 1

    levels = []
    inverse_maps = []
    for depth, point in enumerate(base):
        trans, inverses = ensure(depth)
        levels.append(
            ChainLevel(
                point=point,
                orbit=tuple(trans),
                transversal={q: Permutation(u) for q, u in trans.items()},
                generators=tuple(Permutation(s) for s in level_gens(depth)),
            )
        )
        inverse_maps.append(inverses)
    # Trailing levels with trivial orbit carry no information.
    while levels and len(levels[-1].orbit) == 1:
        levels.pop()
        inverse_maps.pop()
    logger.debug(f"chain built: degree={degree} base={[lv.point for lv in levels]} strong={len(strong)}")
    return StabilizerChain(degree, tuple(levels), tuple(inverse_maps))


class PermutationGroup:
    """A subgroup of Sym(degree) given by generators.

    Immutable after construction; the chain is built once under a lock.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation], name: str = ""):
        if degree < 1:
            raise DomainError(f"degree must be positive, got {degree}")
        gens = tuple(generators)
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatchError(f"generator {g} has degree {g.degree}, expected {degree}")
        self.degree = degree
        self.generators = gens
        self.name = name
        self._chain: StabilizerChain | None = None
        self._table: GroupTable | None = None
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"PermutationGroup{label}(degree={self.degree}, gens=[{','.join(map(str, self.generators))}])"

    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            with self._lock:
                if self._chain is None:
                    self._chain = schreier_sims(self.degree, self.generators)
        return self._chain

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def table(self, cap: int | None = None) -> GroupTable:
        """Cayley table of the group, built once."""
        if self._table is None:
            with self._lock:
                if self._table is None:
                    self._table = GroupTable.from_permutation_group(self, cap)
        return self._table

    def order(self) -> int:
        return self.chain.order()

    def contains(self, p: Permutation) -> bool:
        return self.chain.contains(p)

    __contains__ = contains

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        cap = config.ELEMENT_CAP if cap is None else cap
        size = self.order()
        if size > cap:
            raise CapExceededError("element enumeration", size, cap)
        return self.chain.elements()

    def element_set(self, cap: int | None = None) -> frozenset[Permutation]:
        return frozenset(self.elements(cap))

    def orbit(self, point: int) -> frozenset[int]:
        if not 0 <= point < self.degree:
            raise DomainError(f"point {point} outside domain of degree {self.degree}")
        gens = [g.images for g in self.generators]
        return frozenset(_orbit_transversal(point, gens, self.degree))

    def orbits(self) -> list[frozenset[int]]:
        seen: set[int] = set()
        out = []
        for point in range(self.degree):
            if point not in seen:
                orb = self.orbit(point)
                seen |= orb
                out.append(orb)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(g, h) == compose(h, g) for i, g in enumerate(gens) for h in gens[i + 1:])

    def is_subgroup_of(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def same_group(self, other: PermutationGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup of parent given by generators lying in parent."""

    parent: PermutationGroup
    generators: tuple[Permutation, ...]

    @classmethod
    def of(cls, parent: PermutationGroup, generators: Iterable[Permutation], check: bool = True) -> SubgroupHandle:
        gens = tuple(generators)
        if check:
            for g in gens:
                if not parent.contains(g):
                    raise NotSubgroupError(f"{g} is not an element of the parent group")
        return cls(parent, gens)

    @classmethod
    def from_elements(cls, parent: PermutationGroup, elements: Iterable[Permutation]) -> SubgroupHandle:
        """Handle for a subgroup given as an element set, with greedy generators."""
        return cls(parent, tuple(generators_for(parent.degree, elements)))

    @property
    def group(self) -> PermutationGroup:
        cached = self.__dict__.get("_group")
        if cached is None:
            cached = PermutationGroup(self.parent.degree, self.generators)
            object.__setattr__(self, "_group", cached)
        return cached

    def order(self) -> int:
        return self.group.order()

    def contains(self, p: Permutation) -> bool:
        return self.group.contains(p)

    def elements(self, cap: int | None = None) -> Iterator[Permutation]:
        return self.group.elements(cap)

    def element_set(self, cap: int | None = None) -> frozenset[Permutation]:
        return self.group.element_set(cap)

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.generators)


def generators_for(degree: int, elements: Iterable[Permutation]) -> list[Permutation]:
    """Greedy generating set: keep an element only if it enlarges the span."""
    gens: list[Permutation] = []
    current = PermutationGroup(degree, gens)
    for x in sorted(elements, key=lambda p: p.images):
        if x.is_identity() or current.contains(x):
            continue
        gens.append(x)
        current = PermutationGroup(degree, gens)
    return gens


def build_chain(group: PermutationGroup) -> StabilizerChain:
    return group.chain


def order(group: PermutationGroup) -> int:
    return group.order()


def contains(group: PermutationGroup, p: Permutation) -> bool:
    return group.contains(p)


def elements(group: PermutationGroup, cap: int | None = None) -> Iterator[Permutation]:
    return group.elements(cap)


def orbit(group: PermutationGroup, point: int) -> frozenset[int]:
    return group.orbit(point)


def is_transitive(group: PermutationGroup) -> bool:
    return group.is_transitive()


def is_regular(group: PermutationGroup) -> bool:
    return group.is_regular()


def point_stabilizer(group: PermutationGroup, point: int) -> SubgroupHandle:
    """G_w, read off a chain whose base starts at w."""
    if not 0 <= point < group.degree:
        raise DomainError(f"point {point} outside domain of degree {group.degree}")
    chain = schreier_sims(group.degree, group.generators, initial_base=[point])
    if chain.levels and chain.levels[0].point == point:
        gens = chain.levels[1].generators if len(chain.levels) > 1 else ()
    else:
        # point is fixed by the whole group
        gens = group.generators
    return SubgroupHandle(group, tuple(gens))


def core_is_trivial(group: PermutationGroup, sub: SubgroupHandle, cap: int | None = None) -> bool:
    """Whether the intersection of all conjugates of sub is trivial."""
    cap = config.ELEMENT_CAP if cap is None else cap
    if group.order() > cap:
        raise CapExceededError("core computation", group.order(), cap)
    core = set(sub.elements(cap))
    changed = True
    while changed:
        changed = False
        for s in group.generators:
            shrunk = {x for x in core if conjugate(x, s) in core}
            if len(shrunk) != len(core):
                core = shrunk
                changed = True
    return len(core) == 1


def conjugacy_classes(group: PermutationGroup, cap: int | None = None) -> list[tuple[Permutation, ...]]:
    """Classes ordered by their smallest element (image-tuple order)."""
    elems = sorted(group.elements(cap), key=lambda p: p.images)
    remaining = set(elems)
    classes = []
    for x in elems:
        if x not in remaining:
            continue
        cls = {x}
        queue = [x]
        for y in queue:
            for s in group.generators:
                z = conjugate(y, s)
                if z not in cls:
                    cls.add(z)
                    queue.append(z)
        remaining -= cls
        classes.append(tuple(sorted(cls, key=lambda p: p.images)))
    return classes


def subgroup_transporter(
    group: PermutationGroup,
    h: SubgroupHandle,
    k: SubgroupHandle,
    cap: int | None = None,
) -> Permutation | None:
    """Some g in G with H^g = K, by scanning the elements of G."""
    if h.order() != k.order():
        return None
    k_group = k.group
    gens = [x for x in h.generators if not x.is_identity()]
    for g in group.elements(cap):
        if all(k_group.contains(conjugate(x, g)) for x in gens):
            return g
    return None


def normal_closure(group: PermutationGroup, generators: Iterable[Permutation]) -> SubgroupHandle:
    gens = [g for g in generators if not g.is_identity()]
    closure = PermutationGroup(group.degree, gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for s in group.generators:
            y = conjugate(x, s)
            if not closure.contains(y):
                gens.append(y)
                closure = PermutationGroup(group.degree, gens)
                queue.append(y)
    return SubgroupHandle(group, tuple(gens))


def derived_subgroup(group: PermutationGroup, cap: int | None = None) -> SubgroupHandle:
    cap = config.ELEMENT_CAP if cap is None else cap
    if group.order() > cap:
        raise CapExceededError("derived subgroup", group.order(), cap)
    gens = group.generators
    comms = [commutator(g, h) for i, g in enumerate(gens) for h in gens[i + 1:]]
    return normal_closure(group, comms)


def derived_series(group: PermutationGroup, cap: int | None = None) -> list[PermutationGroup]:
    """G = G^(0) > G^(1) > ... down to the first repeated term."""
    series = [group]
    while True:
        current = series[-1]
        nxt = derived_subgroup(current, cap).group
        if nxt.order() == current.order():
            return series
        series.append(nxt)


def is_soluble(group: PermutationGroup, cap: int | None = None) -> bool:
    return derived_series(group, cap)[-1].order() == 1


def centre(group: PermutationGroup, cap: int | None = None) -> SubgroupHandle:
    gens = group.generators
    central = [x for x in group.elements(cap) if all(compose(x, g) == compose(g, x) for g in gens)]
    return SubgroupHandle.from_elements(group, central)


def exponent(group: PermutationGroup, cap: int | None = None) -> int:
    return math.lcm(*(cls[0].order() for cls in conjugacy_classes(group, cap)))
