"""Automorphisms of small finite groups.

Aut(G) is found by backtracking over images of a minimum generating tuple.
Candidates are pruned by fingerprints (element order, class size, order
modulo G') and by the orders of pairwise products, then extended along a
BFS word tree and accepted when every generator relation holds and the
map is injective.

Maps act on the right: x^(ab) = (x^a)^b, so a.then(b) applies a first.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import primefactors

from . import config
from .abelian import is_table_p_basis, primary_type, table_p_basis
from .errors import CapExceededError, DomainError, NotStandardTupleError, NotTransitiveError
from .group import PermutationGroup, point_stabilizer
from .perm import Permutation, conjugate
from .table import GroupTable

logger = logging.getLogger(__name__)

GroupLike = GroupTable | PermutationGroup


def as_table(group: GroupLike, cap: int | None = None) -> GroupTable:
    if isinstance(group, GroupTable):
        return group
    return group.table(cap)


@dataclass(frozen=True, eq=False)
class GroupMap:
    """A map between enumerated groups, stored as an index array.

    homomorphism and bijective record what has been verified.
    """

    source: GroupTable
    target: GroupTable
    images: np.ndarray
    homomorphism: bool = False
    bijective: bool = False
    label: str = ""

    @classmethod
    def from_images(
        cls,
        source: GroupTable,
        images: Sequence[int] | np.ndarray,
        target: GroupTable | None = None,
        label: str = "",
    ) -> GroupMap:
        target = source if target is None else target
        arr = np.asarray(images, dtype=target.mul.dtype).copy()
        if arr.shape != (source.order,):
            raise DomainError(f"map needs {source.order} images, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= target.order):
            raise DomainError("map images outside the target group")
        arr.setflags(write=False)
        hom = _generator_relations_hold(source, target, arr)
        bij = source.order == target.order and np.unique(arr).size == target.order
        return cls(source, target, arr, hom, bij, label)

    @property
    def key(self) -> bytes:
        return self.images.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupMap):
            return NotImplemented
        return self.source is other.source and self.target is other.target and self.key == other.key

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.key))

    def __call__(self, i: int) -> int:
        return int(self.images[i])

    def is_automorphism(self) -> bool:
        return self.source is self.target and self.homomorphism and self.bijective

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.source.order)))

    def then(self, other: GroupMap) -> GroupMap:
        if self.target is not other.source:
            raise DomainError("maps do not compose")
        images = other.images[self.images]
        return GroupMap(self.source, other.target, images, self.homomorphism and other.homomorphism,
                        self.bijective and other.bijective)

    def inverse(self) -> GroupMap:
        if not self.bijective:
            raise DomainError("map is not bijective")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.source.order, dtype=inv.dtype)
        return GroupMap(self.target, self.source, inv, self.homomorphism, True)

    def verify(self, full: bool = False) -> bool:
        """Re-check the homomorphism property; full=True multiplies out all |G|^2 products."""
        if full:
            return self.source.is_homomorphism(self.images, self.target)
        return _generator_relations_hold(self.source, self.target, self.images)

    def image_set(self, indices: Iterable[int]) -> frozenset[int]:
        return frozenset(int(self.images[i]) for i in indices)

    def fixes(self, indices: Iterable[int]) -> bool:
        return all(int(self.images[i]) == int(i) for i in indices)

    def describe(self) -> dict[str, str]:
        """Generator images as printable strings."""
        src, dst = self.source, self.target
        return {str(src.elements[g]): str(dst.elements[int(self.images[g])]) for g in src.generators}


def _generator_relations_hold(source: GroupTable, target: GroupTable, images: np.ndarray) -> bool:
    if int(images[0]) != 0:
        return False
    for g in source.generators:
        if not np.array_equal(images[source.mul[:, g]], target.mul[images, images[g]]):
            return False
    return True


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


class AutSet:
    """An explicit set of automorphisms of one table, one row per map."""

    def __init__(self, table: GroupTable, maps: Iterable[np.ndarray] | np.ndarray, label: str = ""):
        rows = [np.asarray(m) for m in maps] if not isinstance(maps, np.ndarray) else list(maps)
        if rows:
            matrix = np.unique(np.stack(rows).astype(table.mul.dtype), axis=0)
        else:
            matrix = np.empty((0, table.order), dtype=table.mul.dtype)
        matrix.setflags(write=False)
        self.table = table
        self.matrix = matrix
        self.label = label
        self._keys = {row.tobytes() for row in matrix}

    def __repr__(self) -> str:
        return f"AutSet({self.label or '?'}, size={len(self)})"

    def __len__(self) -> int:
        return self.matrix.shape[0]

    def __iter__(self) -> Iterator[GroupMap]:
        for row in self.matrix:
            yield GroupMap(self.table, self.table, row, True, True)

    def __contains__(self, item: GroupMap | np.ndarray) -> bool:
        images = item.images if isinstance(item, GroupMap) else np.asarray(item, dtype=self.table.mul.dtype)
        return images.tobytes() in self._keys

    def keys(self) -> frozenset[bytes]:
        return frozenset(self._keys)

    def issubset(self, other: AutSet) -> bool:
        return self._keys <= other._keys

    def same_maps(self, other: AutSet) -> bool:
        return self._keys == other._keys

    def contains_identity(self) -> bool:
        return np.arange(self.table.order, dtype=self.table.mul.dtype).tobytes() in self._keys

    def select(self, keep: Sequence[bool] | np.ndarray, label: str = "") -> AutSet:
        return AutSet(self.table, self.matrix[np.asarray(keep, dtype=bool)], label or self.label)

    def _span(self, gens: list[np.ndarray]) -> set[bytes]:
        ident = np.arange(self.table.order, dtype=self.table.mul.dtype)
        seen = {ident.tobytes()}
        frontier = [ident]
        while frontier:
            nxt = []
            for row in frontier:
                for g in gens:
                    prod = g[row]
                    key = prod.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(prod)
            frontier = nxt
        return seen

    def generators(self) -> list[np.ndarray]:
        """Greedy generating subset, in row order."""
        gens: list[np.ndarray] = []
        span = self._span(gens)
        for row in self.matrix:
            if row.tobytes() not in span:
                gens.append(row)
                span = self._span(gens)
        return gens

    def is_closed(self) -> bool:
        """Contains the identity and equals the group its members generate."""
        if not self.contains_identity():
            return False
        return self._span(self.generators()) == self._keys

    def orbits(self) -> list[np.ndarray]:
        """Orbits on group elements, sorted by smallest member."""
        n = self.table.order
        if len(self) == 0:
            return [np.array([x]) for x in range(n)]
        sources = np.broadcast_to(np.arange(n), self.matrix.shape).ravel()
        edges = np.unique(np.stack([sources, self.matrix.ravel().astype(np.int64)], axis=1), axis=0)
        uf = UnionFind(n)
        for x, y in edges:
            if x != y:
                uf.union(int(x), int(y))
        groups: dict[int, list[int]] = {}
        for x in range(n):
            groups.setdefault(uf.find(x), []).append(x)
        return sorted((np.array(v) for v in groups.values()), key=lambda o: int(o[0]))

    def orbit_lengths(self) -> Counter:
        return Counter(len(o) for o in self.orbits())

    def max_orbit_length(self) -> int:
        return max(len(o) for o in self.orbits())

    def acts_semiregularly_on(self, tuple_indices: Sequence[int]) -> bool:
        """No two members agree on the given elements."""
        if len(self) == 0:
            return True
        cols = self.matrix[:, list(tuple_indices)]
        return np.unique(cols, axis=0).shape[0] == len(self)


def _fingerprints(table: GroupTable) -> np.ndarray:
    keys = np.stack([table.element_orders, table.class_sizes, table.abelianization_orders], axis=1)
    _, labels = np.unique(keys, axis=0, return_inverse=True)
    return labels.ravel()


def min_generating_tuple(group: GroupLike) -> tuple[int, tuple[int, ...]]:
    """(d(G), a generating tuple of that length) by exhaustive search.

    The first entry ranges over class representatives only; prefixes that
    span an already-seen subgroup are skipped.
    """
    table = as_table(group)
    cached = getattr(table, "_min_generating_tuple", None)
    if cached is not None:
        return cached
    n = table.order
    if n == 1:
        result: tuple[int, tuple[int, ...]] = (0, ())
        table._min_generating_tuple = result
        return result
    cyclic = np.flatnonzero(table.element_orders == n)
    if cyclic.size:
        result = (1, (int(cyclic[0]),))
        table._min_generating_tuple = result
        return result
    reps = [int(cls[0]) for cls in table.conjugacy_classes if cls[0] != 0]
    k = 2
    while True:
        seen: list[set[bytes]] = [set() for _ in range(k)]

        def dfs(prefix: list[int], mask: np.ndarray) -> tuple[int, ...] | None:
            depth = len(prefix)
            if depth == k - 1:
                for x in np.flatnonzero(~mask):
                    if table.generates([*prefix, int(x)]):
                        return (*prefix, int(x))
                return None
            pool = reps if depth == 0 else [int(x) for x in np.flatnonzero(~mask)]
            for x in pool:
                grown = table.closure([*prefix, x])
                key = grown.tobytes()
                if key in seen[depth]:
                    continue
                seen[depth].add(key)
                found = dfs([*prefix, x], grown)
                if found is not None:
                    return found
            return None

        found = dfs([], table.closure([]))
        if found is not None:
            result = (k, found)
            table._min_generating_tuple = result
            logger.debug(f"d({table.label or 'G'}) = {k}")
            return result
        k += 1


def _backtrack(
    table: GroupTable,
    gens: Sequence[int],
    candidates: Sequence[Sequence[int]],
    limit: int,
    first_nontrivial: bool = False,
) -> list[np.ndarray]:
    tree = table.word_tree(gens)
    orders = table.element_orders
    mul = table.mul
    k = len(gens)
    pair_orders = {(i, j): int(orders[mul[gens[i], gens[j]]]) for i in range(k) for j in range(i + 1, k)}
    prefix_sizes = [int(table.closure(gens[: m + 1]).sum()) for m in range(k)]
    identity = np.arange(table.order, dtype=mul.dtype)
    found: list[np.ndarray] = []
    chosen: list[int] = []
    stats = {"leaves": 0}

    def dfs(pos: int) -> bool:
        if pos == k:
            stats["leaves"] += 1
            phi = table.extend(tree, chosen)
            if phi is None or np.count_nonzero(phi == 0) != 1:
                return False
            if first_nontrivial and np.array_equal(phi, identity):
                return False
            found.append(phi)
            if len(found) > limit:
                raise CapExceededError("automorphism set", len(found), limit)
            return first_nontrivial
        for c in candidates[pos]:
            c = int(c)
            if any(int(orders[mul[chosen[i], c]]) != pair_orders[(i, pos)] for i in range(pos)):
                continue
            chosen.append(c)
            if 0 < pos < k - 1 and int(table.closure(chosen).sum()) != prefix_sizes[pos]:
                chosen.pop()
                continue
            if dfs(pos + 1):
                return True
            chosen.pop()
        return False

    dfs(0)
    logger.debug(f"backtrack on {table.label or 'G'}: {stats['leaves']} leaves, {len(found)} accepted")
    return found


def automorphism_group(group: GroupLike, cap: int | None = None) -> AutSet:
    """All automorphisms of G, by backtracking over images of a minimal generating tuple.

    Args:
        group: A permutation group or its multiplication table.
        cap: Largest |G| accepted; defaults to config.AUT_ORDER_CAP.

    Returns:
        The automorphisms as an AutSet, cached on the table.

    Raises:
        CapExceededError: If |G| exceeds cap.
    """
    table = as_table(group)
    cap = config.AUT_ORDER_CAP if cap is None else cap
    if table.order > cap:
        raise CapExceededError("automorphism group", table.order, cap)
    cached = getattr(table, "_automorphism_group", None)
    if cached is not None:
        return cached
    _, gens = min_generating_tuple(table)
    prints = _fingerprints(table)
    candidates = [np.flatnonzero(prints == prints[g]) for g in gens]
    maps = _backtrack(table, gens, candidates, config.AUTSET_CAP)
    if not maps:
        maps = [np.arange(table.order)]
    result = AutSet(table, maps, label=f"Aut({table.label})")
    table._automorphism_group = result
    return result


def _generators_through(table: GroupTable, subset: Sequence[int]) -> tuple[list[int], int]:
    """Generators of G starting with generators of <subset>; returns them and how many are pinned."""
    pinned: list[int] = []
    mask = table.closure([])
    for x in sorted(int(s) for s in subset):
        if not mask[x]:
            pinned.append(x)
            mask = table.closure(pinned)
    gens = list(pinned)
    orders = table.element_orders
    while not mask.all():
        outside = np.flatnonzero(~mask)
        x = int(outside[np.argmax(orders[outside])])
        gens.append(x)
        mask = table.closure(gens)
    return gens, len(pinned)


def automorphisms_fixing(group: GroupLike, subset: Iterable[int], first_nontrivial: bool = False) -> AutSet:
    """The automorphisms fixing every element of subset.

    Generators of <subset> are pinned to themselves; only the remaining
    generators are searched. With first_nontrivial the search stops at
    the first non-identity map.
    """
    table = as_table(group)
    gens, n_pinned = _generators_through(table, list(subset))
    prints = _fingerprints(table)
    candidates = [[g] if i < n_pinned else np.flatnonzero(prints == prints[g]) for i, g in enumerate(gens)]
    maps = _backtrack(table, gens, candidates, config.AUTSET_CAP, first_nontrivial=first_nontrivial)
    if not first_nontrivial:
        maps.append(np.arange(table.order))
    return AutSet(table, maps, label=f"C_Aut({table.label})")


def inner_automorphisms(group: GroupLike) -> AutSet:
    table = as_table(group)
    return AutSet(table, table.conjugation, label=f"Inn({table.label})")


def central_homomorphisms(group: GroupLike) -> list[np.ndarray]:
    """Every homomorphism G -> Z(G), as an index array into G."""
    table = as_table(group)
    centre = table.centre
    if table.order == 1:
        return [np.zeros(1, dtype=table.mul.dtype)]
    _, gens = min_generating_tuple(table)
    tree = table.word_tree(gens)
    ab_orders = table.abelianization_orders
    orders = table.element_orders
    options = [[int(z) for z in centre if ab_orders[g] % orders[z] == 0] for g in gens]
    homs = []
    for images in itertools.product(*options):
        phi = table.extend(tree, images)
        if phi is not None:
            homs.append(phi)
    return homs


def central_automorphisms(group: GroupLike) -> AutSet:
    """alpha_f: g -> g f(g) for each f with no nontrivial central element inverted."""
    table = as_table(group)
    centre = table.centre
    inv = table.inverses
    maps = []
    for f in central_homomorphisms(table):
        if any(int(f[z]) == int(inv[z]) for z in centre if z != 0):
            continue
        maps.append(table.mul[np.arange(table.order), f])
    return AutSet(table, maps, label=f"Aut_cent({table.label})")


def power_map_exponents(group: GroupLike) -> list[int]:
    """Every e in [1, Exp(G)) for which g -> g^e is an automorphism."""
    table = as_table(group)
    exp = table.exponent
    if exp == 1:
        return [1]
    out = []
    for e in range(1, exp):
        if math.gcd(e, exp) != 1:
            continue
        if _generator_relations_hold(table, table, table.power_map(e)):
            out.append(e)
    return out


def power_map_automorphisms(group: GroupLike) -> AutSet:
    table = as_table(group)
    maps = [table.power_map(e) for e in power_map_exponents(table)]
    return AutSet(table, maps, label=f"Aut_pow({table.label})")


def stabilizer_mask(group: PermutationGroup, point: int = 0) -> np.ndarray:
    table = group.table()
    stab = point_stabilizer(group, point)
    return table.closure(table.index[g] for g in stab.generators)


def stabilizer_class(group: GroupLike, mask: np.ndarray) -> frozenset[frozenset[int]]:
    """The G-conjugates of a subgroup, each as a set of element indices."""
    return frozenset(as_table(group).subgroup_conjugates(mask))


def aut_perm_from_stabilizer(table: GroupTable, mask: np.ndarray, cap: int | None = None) -> AutSet:
    """Automorphisms that send the stabilizer onto one of its G-conjugates."""
    allowed = stabilizer_class(table, mask)
    members = np.flatnonzero(mask)
    aut = automorphism_group(table, cap)
    keep = [frozenset(int(x) for x in row[members]) in allowed for row in aut.matrix]
    return aut.select(keep, label=f"Aut_perm({table.label})")


def aut_perm(group: PermutationGroup, cap: int | None = None) -> AutSet:
    """Automorphisms induced by the normaliser in Sym(degree), via point stabilizers.

    These are the automorphisms of G mapping the stabilizer of point 1 to a
    point stabilizer.

    Args:
        group: A transitive permutation group.
        cap: Largest |G| accepted for the automorphism search; defaults to config.AUT_ORDER_CAP.

    Returns:
        Aut_perm(G) as an AutSet.

    Raises:
        NotTransitiveError: If group is not transitive.
        CapExceededError: If |G| exceeds cap or the table cap.
    """
    if not group.is_transitive():
        raise NotTransitiveError(f"{group!r} is not transitive")
    table = group.table()
    return aut_perm_from_stabilizer(table, stabilizer_mask(group, 0), cap)


def normaliser_elements(group: PermutationGroup) -> Iterator[Permutation]:
    """Every s in Sym(degree) with G^s = G, by scanning Sym(degree)."""
    if group.degree > config.HARD_MAX_DEGREE:
        raise CapExceededError("normaliser scan degree", group.degree, config.HARD_MAX_DEGREE)
    table = group.table()
    gens = [g for g in group.generators if not g.is_identity()]
    for images in itertools.permutations(range(group.degree)):
        s = Permutation(images)
        if all(conjugate(g, s) in table.index for g in gens):
            yield s


def aut_perm_via_normaliser(group: PermutationGroup) -> AutSet:
    """Conjugation maps induced by N_Sym(degree)(G)."""
    table = group.table()
    tree = table.word_tree(table.generators)
    seen: set[tuple[int, ...]] = set()
    maps = []
    for s in normaliser_elements(group):
        images = tuple(table.index[conjugate(table.elements[g], s)] for g in table.generators)
        if images in seen:
            continue
        seen.add(images)
        phi = table.extend(tree, images)
        if phi is None:
            raise DomainError(f"conjugation by {s} is not a homomorphism")
        maps.append(phi)
    if not maps:
        maps = [np.arange(table.order)]
    return AutSet(table, maps, label=f"N-induced({table.label})")


def orbit_length_multiset(auts: AutSet, group: GroupLike | None = None) -> Counter:
    if group is not None and as_table(group) is not auts.table:
        raise DomainError("automorphism set belongs to a different group")
    return auts.orbit_lengths()


def maol(group: GroupLike, cap: int | None = None) -> int:
    return automorphism_group(group, cap).max_orbit_length()


def maol_perm(group: PermutationGroup, cap: int | None = None) -> int:
    """Maximum Aut_perm(G)-orbit length on G. Only defined for transitive G."""
    return aut_perm(group, cap).max_orbit_length()


def standard_generating_tuple(group: GroupLike) -> tuple[int, ...]:
    """A standard generating tuple of an abelian group: Sylow projections are padded bases."""
    table = as_table(group)
    if not table.is_abelian():
        raise DomainError("standard generating tuples need an abelian group")
    everything = np.ones(table.order, dtype=bool)
    bases = {int(p): table_p_basis(table, everything, int(p)) for p in primefactors(table.order)}
    length = max((len(b) for b in bases.values()), default=0)
    out = []
    for i in range(length):
        acc = 0
        for basis in bases.values():
            if i < len(basis):
                acc = table.multiply(acc, basis[i])
        out.append(acc)
    return tuple(out)


def is_standard_generating_tuple(table: GroupTable, entries: Sequence[int]) -> bool:
    if not table.is_abelian():
        return False
    n = table.order
    kind = primary_type(table)
    d = max((len(kind.sylow(p)) for p in set(kind.primes)), default=0)
    if len(entries) != d:
        return False
    for p in primefactors(n):
        p = int(p)
        pa = p ** sum(kind.exponents[i] for i in kind.sylow(p))
        m = n // pa
        u = m * pow(m, -1, pa)
        projections = [table.power(int(x), u) for x in entries]
        r = len(kind.sylow(p))
        if not is_table_p_basis(table, projections[:r], p, pa):
            return False
        if any(x != 0 for x in projections[r:]):
            return False
    return True


@dataclass(frozen=True)
class PacTuple:
    """Powers, induced automorphisms of G' and commutators of a standard tuple."""

    powers: tuple[int, ...]
    automorphisms: tuple[tuple[int, ...], ...]
    commutators: tuple[int, ...]


def standard_tuple(group: GroupLike) -> tuple[int, ...]:
    """A standard tuple in G: lifts of a standard generating tuple of G/G'."""
    table = as_table(group)
    quotient, coset_of = table.quotient(table.derived_mask)
    return tuple(int(np.flatnonzero(coset_of == q)[0]) for q in standard_generating_tuple(quotient))


def is_standard_tuple(group: GroupLike, entries: Sequence[int]) -> bool:
    table = as_table(group)
    quotient, coset_of = table.quotient(table.derived_mask)
    return is_standard_generating_tuple(quotient, [int(coset_of[g]) for g in entries])


def pac_tuple(group: GroupLike, entries: Sequence[int], cap: int = 200) -> PacTuple:
    table = as_table(group)
    if table.order > cap:
        raise CapExceededError("power-automorphism-commutator tuple", table.order, cap)
    if not is_standard_tuple(table, entries):
        raise NotStandardTupleError(f"{list(entries)} is not a standard tuple")
    derived = np.flatnonzero(table.derived_mask)
    ab_orders = table.abelianization_orders
    powers = tuple(table.power(int(g), int(ab_orders[g])) for g in entries)
    autos = tuple(tuple(int(x) for x in table.conjugation[int(g), derived]) for g in entries)
    comms = tuple(table.commutator(int(g), int(h)) for i, g in enumerate(entries) for h in entries[i + 1:])
    return PacTuple(powers, autos, comms)


def pac_equivalent(group: GroupLike, first: Sequence[int], second: Sequence[int]) -> bool:
    return pac_tuple(group, first) == pac_tuple(group, second)


def centralizing_automorphism_between(group: GroupLike, first: Sequence[int], second: Sequence[int]) -> GroupMap | None:
    """Some alpha in C_Aut(G)(G') with first^alpha = second, or None."""
    table = as_table(group)
    if len(first) != len(second):
        return None
    derived = np.flatnonzero(table.derived_mask)
    cent = automorphisms_fixing(table, derived)
    cols = list(first)
    target = np.asarray(second, dtype=table.mul.dtype)
    for row in cent.matrix:
        if np.array_equal(row[cols], target):
            return GroupMap(table, table, row, True, True, label="G'-centralizing")
    return None
