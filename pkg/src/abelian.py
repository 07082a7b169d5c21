"""Finite abelian groups in primary form.

An AbelianGroup is a product of cyclic factors Z/p^e, grouped by prime
(ascending) with exponents descending inside each prime. Elements are
coordinate tuples, one entry per factor.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy import factorint, totient
from sympy.utilities.iterables import partitions

from .errors import DomainError, InvalidParameterError, NotSubgroupError
from .table import GroupTable

logger = logging.getLogger(__name__)

Vector = tuple[int, ...]


def euler_phi(n: int) -> int:
    if n < 1:
        raise InvalidParameterError(f"euler_phi needs n >= 1, got {n}")
    return int(totient(n))


@dataclass(frozen=True)
class AbelianGroup:
    """Z/p_1^e_1 x ... x Z/p_k^e_k in primary form."""

    primes: tuple[int, ...]
    exponents: tuple[int, ...]
    moduli: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        if len(self.primes) != len(self.exponents):
            raise InvalidParameterError("primes and exponents differ in length")
        pairs = list(zip(self.primes, self.exponents))
        if any(e < 1 for _, e in pairs):
            raise InvalidParameterError("exponents must be positive")
        if pairs != sorted(pairs, key=lambda pe: (pe[0], -pe[1])):
            raise InvalidParameterError("factors must be grouped by ascending prime with descending exponents")
        object.__setattr__(self, "moduli", tuple(p**e for p, e in pairs))

    @classmethod
    def from_invariants(cls, factors: Iterable[int]) -> AbelianGroup:
        """Primary form of Z/m_1 x ... x Z/m_k."""
        pairs = []
        for m in factors:
            if m < 2:
                raise InvalidParameterError(f"cyclic factor orders must be >= 2, got {m}")
            pairs.extend(factorint(m).items())
        pairs.sort(key=lambda pe: (pe[0], -pe[1]))
        return cls(tuple(int(p) for p, _ in pairs), tuple(int(e) for _, e in pairs))

    @classmethod
    def p_group(cls, p: int, exponents: Sequence[int]) -> AbelianGroup:
        exps = tuple(sorted(exponents, reverse=True))
        return cls((p,) * len(exps), exps)

    def __str__(self) -> str:
        if not self.moduli:
            return "1"
        return " x ".join(f"Z/{m}" for m in self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.moduli) if self.moduli else 1

    def is_p_group(self) -> bool:
        return len(set(self.primes)) <= 1

    @property
    def prime(self) -> int:
        if not self.primes or not self.is_p_group():
            raise DomainError(f"{self} is not a nontrivial p-group")
        return self.primes[0]

    def zero(self) -> Vector:
        return (0,) * self.rank

    def unit(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple((a + b) % m for a, b, m in zip(x, y, self.moduli))

    def neg(self, x: Vector) -> Vector:
        return tuple((-a) % m for a, m in zip(x, self.moduli))

    def scale(self, k: int, x: Vector) -> Vector:
        return tuple((k * a) % m for a, m in zip(x, self.moduli))

    def combine(self, coeffs: Sequence[int], vectors: Sequence[Vector]) -> Vector:
        acc = self.zero()
        for c, v in zip(coeffs, vectors):
            acc = self.add(acc, self.scale(c, v))
        return acc

    def element_order(self, x: Vector) -> int:
        return math.lcm(*(m // math.gcd(a, m) for a, m in zip(x, self.moduli))) if self.moduli else 1

    def contains(self, x: Vector) -> bool:
        return len(x) == self.rank and all(0 <= a < m for a, m in zip(x, self.moduli))

    def elements(self) -> Iterator[Vector]:
        return itertools.product(*(range(m) for m in self.moduli))

    def span(self, generators: Iterable[Vector]) -> frozenset[Vector]:
        gens = [g for g in generators if any(g)]
        members = {self.zero()}
        frontier = [self.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def sylow(self, p: int) -> tuple[int, ...]:
        """Factor positions belonging to the prime p."""
        return tuple(i for i, q in enumerate(self.primes) if q == p)

    def sylow_group(self, p: int) -> AbelianGroup:
        idx = self.sylow(p)
        return AbelianGroup(tuple(self.primes[i] for i in idx), tuple(self.exponents[i] for i in idx))

    def to_table(self, cap: int | None = None) -> GroupTable:
        gens = [self.unit(i) for i in range(self.rank)]
        return GroupTable.from_generators(self.zero(), gens, self.add, cap, label=str(self))

    def subgroups(self) -> list[frozenset[Vector]]:
        """Every subgroup, smallest first."""
        table = self.to_table()
        start = table.closure([])
        found = {start.tobytes(): start}
        frontier = [start]
        while frontier:
            nxt = []
            for mask in frontier:
                members = np.flatnonzero(mask)
                for x in np.flatnonzero(~mask):
                    grown = table.closure(np.append(members, x))
                    key = grown.tobytes()
                    if key not in found:
                        found[key] = grown
                        nxt.append(grown)
            frontier = nxt
        subs = [frozenset(table.elements[i] for i in np.flatnonzero(m)) for m in found.values()]
        return sorted(subs, key=lambda s: (len(s), sorted(s)))


def abelian_groups_of_order(n: int) -> list[AbelianGroup]:
    """Every abelian group of order n up to isomorphism, one per choice of exponent partitions."""
    if n < 1:
        raise InvalidParameterError(f"order must be >= 1, got {n}")
    per_prime = []
    for p, e in sorted(factorint(n).items()):
        options = []
        for part in partitions(e):
            exps = sorted((k for k, mult in part.items() for _ in range(mult)), reverse=True)
            options.append([(int(p), k) for k in exps])
        per_prime.append(sorted(options, key=lambda o: [-k for _, k in o]))
    groups = []
    for choice in itertools.product(*per_prime):
        pairs = [pe for block in choice for pe in block]
        groups.append(AbelianGroup(tuple(p for p, _ in pairs), tuple(k for _, k in pairs)))
    return groups


def _require_p_group(a: AbelianGroup) -> int:
    if a.rank == 0 or not a.is_p_group():
        raise DomainError(f"{a} must be a nontrivial abelian p-group")
    return a.prime


def basis_check(a: AbelianGroup, vectors: Sequence[Vector]) -> bool:
    """Whether vectors is a basis of the p-group a: right orders and a direct decomposition."""
    p = _require_p_group(a)
    if len(vectors) != a.rank or not all(a.contains(v) for v in vectors):
        return False
    if any(a.element_order(v) != p**e for v, e in zip(vectors, a.exponents)):
        return False
    combos = {a.combine(c, vectors) for c in itertools.product(*(range(m) for m in a.moduli))}
    return len(combos) == a.order


def all_bases(a: AbelianGroup) -> Iterator[tuple[Vector, ...]]:
    p = _require_p_group(a)
    by_order: dict[int, list[Vector]] = {}
    for x in a.elements():
        by_order.setdefault(a.element_order(x), []).append(x)

    def extend(prefix: list[Vector], span: frozenset[Vector]) -> Iterator[tuple[Vector, ...]]:
        i = len(prefix)
        if i == a.rank:
            yield tuple(prefix)
            return
        need = math.prod(p**e for e in a.exponents[: i + 1])
        for x in by_order.get(p ** a.exponents[i], []):
            if x in span:
                continue
            grown = a.span([*prefix, x])
            if len(grown) == need:
                yield from extend([*prefix, x], grown)

    yield from extend([], frozenset({a.zero()}))


def _coordinates(a: AbelianGroup, basis: Sequence[Vector], positions: Sequence[int]) -> dict[Vector, tuple[int, ...]]:
    """Coefficients of every element of <basis[i] : i in positions> in that sub-basis."""
    ranges = [range(a.moduli[i]) for i in positions]
    out = {}
    for coeffs in itertools.product(*ranges):
        out[a.combine(coeffs, [basis[i] for i in positions])] = coeffs
    return out


@dataclass(frozen=True)
class AdaptedBasis:
    basis: tuple[Vector, ...]
    indices: tuple[int, ...]

    def socle_vectors(self, a: AbelianGroup) -> tuple[Vector, ...]:
        p = a.prime
        return tuple(a.scale(p ** (a.exponents[i] - 1), self.basis[i]) for i in self.indices)


def adapted_basis(a: AbelianGroup, b: Iterable[Vector]) -> AdaptedBasis:
    """Basis of a whose top-power socle vectors at the returned positions form a basis of b.

    b must be an elementary abelian subgroup of a. Positions are 0-based.
    """
    p = _require_p_group(a)
    members = frozenset(b)
    if not all(a.contains(x) for x in members):
        raise NotSubgroupError("subgroup has vectors outside the group")
    if a.span(members) != members:
        raise NotSubgroupError("subset is not closed under addition")
    if any(a.scale(p, x) != a.zero() for x in members):
        raise InvalidParameterError("subgroup is not elementary abelian")

    basis = [a.unit(i) for i in range(a.rank)]
    chosen: list[int] = []
    active = list(range(a.rank))
    remaining = members
    while len(remaining) > 1:
        coords = _coordinates(a, basis, active)
        nonzero = sorted(x for x in remaining if any(x))
        pivot_vec = nonzero[0]
        u = dict(zip(active, coords[pivot_vec]))
        # pivot_vec sits in the socle: coefficient of basis[i] is u_i * p^(e_i - 1)
        support = [i for i in active if u[i]]
        i0 = min(support, key=lambda i: (a.exponents[i], i))
        e0 = a.exponents[i0]
        root = a.zero()
        for i in support:
            unit_coeff = u[i] // p ** (a.exponents[i] - 1)
            root = a.add(root, a.scale(unit_coeff * p ** (a.exponents[i] - e0), basis[i]))
        basis[i0] = root
        chosen.append(i0)
        active.remove(i0)
        complement = set(_coordinates(a, basis, active))
        remaining = frozenset(x for x in remaining if x in complement)
        logger.debug(f"adapted basis: pivot {pivot_vec} at position {i0}, {len(remaining)} left")

    result = AdaptedBasis(tuple(basis), tuple(sorted(chosen)))
    if not basis_check(a, result.basis):
        raise DomainError("adapted basis construction produced a non-basis")
    if a.span(result.socle_vectors(a)) != members or len(members) != p ** len(result.indices):
        raise DomainError("adapted basis socle vectors do not form a basis of the subgroup")
    return result


def root_adapted_basis_exists(a: AbelianGroup, b: Iterable[Vector]) -> bool:
    """Whether some basis of a has, for a basis of b, a root of every entry.

    Exhaustive: b is a direct sum of cyclic groups <p^k a_i> over distinct
    basis entries a_i for some basis of a and exponents k.
    """
    p = _require_p_group(a)
    members = frozenset(b)
    for basis in all_bases(a):
        for ks in itertools.product(*(range(e + 1) for e in a.exponents)):
            gens = [a.scale(p**k, v) for k, v in zip(ks, basis)]
            if math.prod(a.element_order(g) for g in gens) == len(members) and a.span(gens) == members:
                return True
    return False


@dataclass(frozen=True)
class VectorMap:
    """A map of an abelian group given on every element."""

    group: AbelianGroup
    images: dict[Vector, Vector]

    def __call__(self, x: Vector) -> Vector:
        return self.images[x]

    def is_identity(self) -> bool:
        return all(x == y for x, y in self.images.items())

    def is_automorphism(self) -> bool:
        a = self.group
        if len(set(self.images.values())) != a.order:
            return False
        gens = [a.unit(i) for i in range(a.rank)]
        return all(self.images[a.add(x, g)] == a.add(self.images[x], self.images[g]) for x in a.elements() for g in gens)

    def fixes(self, subset: Iterable[Vector]) -> bool:
        return all(self.images[x] == x for x in subset)


@dataclass(frozen=True)
class CentralizerResult:
    trivial: bool
    witness: VectorMap | None


def aut_centralizer_is_trivial(a: AbelianGroup, b: Iterable[Vector]) -> CentralizerResult:
    """Decide whether only the identity automorphism of a fixes the proper subgroup b pointwise.

    That happens exactly when |b| is odd and |a| = 2|b|. Otherwise a
    nontrivial witness is built on one Sylow component and verified.
    """
    members = frozenset(b)
    if not all(a.contains(x) for x in members) or a.span(members) != members:
        raise NotSubgroupError("b is not a subgroup of a")
    if len(members) == a.order:
        raise InvalidParameterError("b must be a proper subgroup")
    if len(members) % 2 == 1 and a.order == 2 * len(members):
        return CentralizerResult(True, None)

    for p in sorted(set(a.primes)):
        idx = a.sylow(p)
        a_p = a.sylow_group(p)
        b_p = frozenset(tuple(x[i] for i in idx) for x in members if all(x[j] == 0 for j in range(a.rank) if j not in idx))
        if len(b_p) == a_p.order:
            continue
        if p == 2 and a_p.order == 2 and len(b_p) == 1:
            continue
        local = _local_witness(a_p, b_p)
        images = {}
        for x in a.elements():
            part = tuple(x[i] for i in idx)
            moved = local[part]
            y = list(x)
            for k, i in enumerate(idx):
                y[i] = moved[k]
            images[x] = tuple(y)
        witness = VectorMap(a, images)
        if witness.is_identity() or not witness.is_automorphism() or not witness.fixes(members):
            raise DomainError(f"witness construction failed for {a} at prime {p}")
        return CentralizerResult(False, witness)
    raise DomainError(f"no Sylow component admits a witness in {a}")


def _local_witness(a: AbelianGroup, b: frozenset[Vector]) -> dict[Vector, Vector]:
    p = a.prime
    if a.order == p:
        # b trivial and p odd: inversion
        return {x: a.neg(x) for x in a.elements()}
    # a functional lam: a -> Z/p vanishing on b gives an index-p subgroup h containing b
    lam = next(
        lam
        for lam in itertools.product(range(p), repeat=a.rank)
        if any(lam) and all(sum(l * c for l, c in zip(lam, x)) % p == 0 for x in b)
    )

    def iota(x: Vector) -> int:
        return sum(l * c for l, c in zip(lam, x)) % p

    j = next(i for i, l in enumerate(lam) if l)
    g = a.unit(j)
    scale_back = pow(iota(g), -1, p)
    h0 = min(x for x in a.elements() if any(x) and iota(x) == 0 and a.element_order(x) == p)
    return {x: a.add(x, a.scale((iota(x) * scale_back) % p, h0)) for x in a.elements()}


def primary_type(table: GroupTable, mask: np.ndarray | None = None) -> AbelianGroup:
    """Primary form of an abelian group (or abelian subgroup) given by a table.

    Read off from how many elements have order dividing p^k.
    """
    members = np.arange(table.order) if mask is None else np.flatnonzero(mask)
    orders = table.element_orders[members]
    size = len(members)
    primes: list[int] = []
    exps: list[int] = []
    for p, a in sorted(factorint(size).items()):
        # rank of the p^k-torsion layers: |Omega_k| = p^(sum min(k, e_i))
        logs = [0]
        for k in range(1, a + 1):
            count = int(np.count_nonzero(np.isin(orders, [p**j for j in range(k + 1)])))
            logs.append(round(math.log(count, p)))
        layer = [logs[k] - logs[k - 1] for k in range(1, a + 1)]
        layer.append(0)
        for k in range(a, 0, -1):
            multiplicity = layer[k - 1] - layer[k]
            primes.extend([int(p)] * multiplicity)
            exps.extend([k] * multiplicity)
    return AbelianGroup(tuple(primes), tuple(exps))


def table_p_basis(table: GroupTable, mask: np.ndarray, p: int) -> tuple[int, ...]:
    """A basis (element indices, descending orders) of the Sylow p-subgroup of an abelian subgroup."""
    members = np.flatnonzero(mask)
    orders = table.element_orders
    sylow = [int(x) for x in members if _is_power_of(int(orders[x]), p)]
    sylow_mask = np.zeros(table.order, dtype=bool)
    sylow_mask[sylow] = True
    kind = primary_type(table, sylow_mask)
    targets = [p**e for e in kind.exponents]

    def extend(prefix: list[int], size: int) -> tuple[int, ...] | None:
        i = len(prefix)
        if i == len(targets):
            return tuple(prefix)
        for x in sylow:
            if orders[x] != targets[i]:
                continue
            grown = int(table.closure([*prefix, x]).sum())
            if grown == size * targets[i]:
                found = extend([*prefix, x], grown)
                if found is not None:
                    return found
        return None

    basis = extend([], 1)
    if basis is None:
        raise DomainError(f"no basis found for the Sylow {p}-subgroup")
    return basis


def is_table_p_basis(table: GroupTable, vectors: Sequence[int], p: int, sylow_size: int) -> bool:
    """Basis test inside a table: orders descending powers of p, direct, spanning."""
    orders = [int(table.element_orders[v]) for v in vectors]
    if any(not _is_power_of(o, p) or o == 1 for o in orders):
        return False
    if orders != sorted(orders, reverse=True):
        return False
    return math.prod(orders) == sylow_size and int(table.closure(vectors).sum()) == sylow_size


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1
