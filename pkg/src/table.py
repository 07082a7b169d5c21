"""Cayley tables for enumerated finite groups.

Elements are indexed 0..N-1 with the identity at 0. The product table is a
numpy array with mul[i, j] = index of e_i * e_j. Everything the automorphism
search, the census and the G_n cross-checks need (inverses, element orders,
conjugation, closures, word trees) is read off that array.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import config
from .errors import CapExceededError, DomainError
from .perm import compose

logger = logging.getLogger(__name__)


def _index_dtype(n: int) -> type:
    return np.int16 if n < 2**15 else np.int32


@dataclass(frozen=True)
class WordTree:
    """Breadth-first spanning tree of the Cayley graph for a generator tuple.

    Each level lists nodes, their parents one level up, and the position
    of the generator used: e_node = e_parent * gens[position].
    """

    generators: tuple[int, ...]
    levels: tuple[tuple[np.ndarray, np.ndarray, np.ndarray], ...]
    size: int


class GroupTable:
    """An enumerated group with a full multiplication table."""

    def __init__(self, elements: Sequence[Hashable], mul: np.ndarray, generators: Sequence[int], label: str = ""):
        self.elements = list(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.mul = mul
        self.generators = tuple(int(g) for g in generators)
        self.label = label
        self.order = len(self.elements)
        self._ar = np.arange(self.order, dtype=mul.dtype)

    def __repr__(self) -> str:
        return f"GroupTable({self.label or '?'}, order={self.order})"

    @classmethod
    def from_generators(
        cls,
        identity: Hashable,
        generators: Sequence[Hashable],
        multiply: Callable[[Hashable, Hashable], Hashable],
        cap: int | None = None,
        label: str = "",
    ) -> GroupTable:
        """Enumerate <generators> by right multiplication and fill the table column by column."""
        cap = config.TABLE_CAP if cap is None else cap
        gens = [g for g in dict.fromkeys(generators) if g != identity]
        elements = [identity]
        index = {identity: 0}
        right: list[list[int]] = []
        parent: list[tuple[int, int]] = [(-1, -1)]
        i = 0
        while i < len(elements):
            row = []
            for k, g in enumerate(gens):
                y = multiply(elements[i], g)
                j = index.get(y)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise CapExceededError("Cayley table", j + 1, cap)
                    index[y] = j
                    elements.append(y)
                    parent.append((i, k))
                row.append(j)
            right.append(row)
            i += 1
        n = len(elements)
        dtype = _index_dtype(n)
        gen_table = np.array(right, dtype=dtype).reshape(n, len(gens))
        mul = np.empty((n, n), dtype=dtype)
        mul[:, 0] = np.arange(n, dtype=dtype)
        # e_j = e_parent * g_k, so column j is column parent pushed through g_k
        for j in range(1, n):
            p, k = parent[j]
            mul[:, j] = gen_table[mul[:, p], k]
        gen_idx = [index[g] for g in gens]
        logger.debug(f"table built: {label or 'group'} order={n} gens={len(gens)}")
        return cls(elements, mul, gen_idx, label)

    @classmethod
    def from_permutation_group(cls, group, cap: int | None = None, label: str = "") -> GroupTable:
        cap = config.TABLE_CAP if cap is None else cap
        size = group.order()
        if size > cap:
            raise CapExceededError("Cayley table", size, cap)
        return cls.from_generators(group.identity(), group.generators, compose, cap, label or group.name)

    def element_index(self, x: Hashable) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise DomainError(f"{x} is not an element of {self.label or 'the group'}") from None

    def multiply(self, i: int, j: int) -> int:
        return int(self.mul[i, j])

    @cached_property
    def inverses(self) -> np.ndarray:
        rows, cols = np.nonzero(self.mul == 0)
        inv = np.empty(self.order, dtype=self.mul.dtype)
        inv[rows] = cols
        return inv

    def inverse(self, i: int) -> int:
        return int(self.inverses[i])

    def power(self, i: int, e: int) -> int:
        e %= int(self.element_orders[i])
        acc = 0
        for _ in range(e):
            acc = int(self.mul[acc, i])
        return acc

    def power_map(self, e: int) -> np.ndarray:
        """x -> x^e for every x at once."""
        e %= self.exponent
        out = np.zeros(self.order, dtype=self.mul.dtype)
        base = self._ar.copy()
        while e:
            if e & 1:
                out = self.mul[out, base]
            base = self.mul[base, base]
            e >>= 1
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        return self.orders_modulo(np.arange(self.order) == 0)

    def orders_modulo(self, normal_mask: np.ndarray) -> np.ndarray:
        """Order of each element's image in G/N, with N given as a membership mask."""
        orders = np.zeros(self.order, dtype=np.int64)
        current = self._ar.copy()
        m = 1
        while True:
            hit = normal_mask[current] & (orders == 0)
            orders[hit] = m
            if orders.all():
                return orders
            current = self.mul[current, self._ar]
            m += 1

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(x) for x in np.unique(self.element_orders)))

    def commutator(self, i: int, j: int) -> int:
        inv = self.inverses
        return int(self.mul[self.mul[inv[i], inv[j]], self.mul[i, j]])

    @cached_property
    def conjugation(self) -> np.ndarray:
        """conjugation[s, i] is the index of e_s^-1 e_i e_s."""
        left = self.mul[self.inverses]
        return self.mul[left, self._ar[:, None]]

    @cached_property
    def conjugacy_classes(self) -> list[np.ndarray]:
        """Classes as sorted index arrays, ordered by smallest member."""
        conj = self.conjugation
        seen = np.zeros(self.order, dtype=bool)
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = np.unique(conj[:, x])
            seen[cls] = True
            classes.append(cls)
        return classes

    @cached_property
    def class_sizes(self) -> np.ndarray:
        sizes = np.zeros(self.order, dtype=np.int64)
        for cls in self.conjugacy_classes:
            sizes[cls] = len(cls)
        return sizes

    @cached_property
    def centre_mask(self) -> np.ndarray:
        return (self.conjugation == self._ar[None, :]).all(axis=0)

    @property
    def centre(self) -> np.ndarray:
        return np.flatnonzero(self.centre_mask)

    def is_abelian(self) -> bool:
        return bool(self.centre_mask.all())

    def closure(self, generators: Iterable[int]) -> np.ndarray:
        """Membership mask of the subgroup generated by the given indices."""
        gens = np.unique(np.fromiter((int(g) for g in generators), dtype=np.int64))
        gens = gens[gens != 0]
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        if gens.size == 0:
            return mask
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            nxt = self.mul[np.ix_(frontier, gens)].ravel()
            nxt = np.unique(nxt[~mask[nxt]])
            mask[nxt] = True
            frontier = nxt
        return mask

    def generates(self, generators: Iterable[int]) -> bool:
        """Whether the indices generate the whole group; stops once past half the order."""
        gens = np.unique(np.fromiter((int(g) for g in generators), dtype=np.int64))
        gens = gens[gens != 0]
        if self.order == 1:
            return True
        if gens.size == 0:
            return False
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        count = 1
        frontier = np.array([0], dtype=np.int64)
        while frontier.size:
            nxt = self.mul[np.ix_(frontier, gens)].ravel()
            nxt = np.unique(nxt[~mask[nxt]])
            mask[nxt] = True
            count += nxt.size
            if 2 * count > self.order:
                return True
            frontier = nxt
        return count == self.order

    def normal_closure(self, generators: Iterable[int]) -> np.ndarray:
        mask = self.closure(generators)
        conj = self.conjugation[list(self.generators)] if self.generators else np.empty((0, self.order), dtype=int)
        while True:
            members = np.flatnonzero(mask)
            images = np.unique(conj[:, members])
            if mask[images].all():
                return mask
            mask = self.closure(np.concatenate([members, images]))

    @cached_property
    def derived_mask(self) -> np.ndarray:
        gens = self.generators
        comms = [self.commutator(g, h) for i, g in enumerate(gens) for h in gens[i + 1:]]
        return self.normal_closure(comms)

    @cached_property
    def abelianization_orders(self) -> np.ndarray:
        return self.orders_modulo(self.derived_mask)

    def quotient(self, normal_mask: np.ndarray) -> tuple[GroupTable, np.ndarray]:
        """G/N as a table over coset ids, plus the coset id of every element."""
        members = np.flatnonzero(normal_mask)
        coset_of = np.full(self.order, -1, dtype=np.int64)
        reps: list[int] = []
        for x in range(self.order):
            if coset_of[x] < 0:
                coset_of[self.mul[members, x]] = len(reps)
                reps.append(x)
        q_gens = sorted({int(coset_of[g]) for g in self.generators} - {0})
        q_mul = coset_of[self.mul[np.ix_(reps, reps)]].astype(_index_dtype(len(reps)))
        return GroupTable(list(range(len(reps))), q_mul, q_gens, f"{self.label}/N"), coset_of

    def is_normal(self, mask: np.ndarray) -> bool:
        members = np.flatnonzero(mask)
        return bool(mask[self.conjugation[np.ix_(list(self.generators), members)]].all())

    def word_tree(self, generators: Sequence[int]) -> WordTree:
        """BFS tree over the given generators; size is the order of the subgroup they span."""
        gens = np.asarray(generators, dtype=np.int64)
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        frontier = np.array([0], dtype=np.int64)
        levels = []
        size = 1
        while frontier.size and gens.size:
            products = self.mul[np.ix_(frontier, gens)]
            flat = products.ravel()
            fresh = ~seen[flat]
            if not fresh.any():
                break
            positions = np.flatnonzero(fresh)
            nodes, first = np.unique(flat[positions], return_index=True)
            chosen = positions[first]
            parents = frontier[chosen // gens.size]
            gen_pos = chosen % gens.size
            seen[nodes] = True
            levels.append((nodes, parents, gen_pos))
            size += nodes.size
            frontier = nodes
        return WordTree(tuple(int(g) for g in generators), tuple(levels), size)

    def extend(self, tree: WordTree, images: Sequence[int], target: GroupTable | None = None) -> np.ndarray | None:
        """Extend generator images to a homomorphism into target, or None if inconsistent.

        Images are propagated along the tree and then every relation
        phi(x * g) = phi(x) * phi(g) is checked for the tree's generators.
        """
        target = self if target is None else target
        if tree.size != self.order:
            raise DomainError("word tree generators do not span the group")
        img = np.asarray(images, dtype=np.int64)
        phi = np.zeros(self.order, dtype=target.mul.dtype)
        for nodes, parents, gen_pos in tree.levels:
            phi[nodes] = target.mul[phi[parents], img[gen_pos]]
        for k, g in enumerate(tree.generators):
            if not np.array_equal(phi[self.mul[:, g]], target.mul[phi, img[k]]):
                return None
        return phi

    def is_homomorphism(self, phi: np.ndarray, target: GroupTable | None = None) -> bool:
        """Full |G|^2 check."""
        target = self if target is None else target
        return bool(np.array_equal(phi[self.mul], target.mul[phi[:, None], phi[None, :]]))

    def subgroup_conjugates(self, mask: np.ndarray) -> list[frozenset[int]]:
        """Distinct G-conjugates of a subgroup given as a mask."""
        members = np.flatnonzero(mask)
        seen: set[frozenset[int]] = set()
        out = []
        for s in range(self.order):
            conj = frozenset(int(x) for x in self.conjugation[s, members])
            if conj not in seen:
                seen.add(conj)
                out.append(conj)
        return out
