"""Transitive groups of small degree and the classification verifiers.

Subgroups of Sym(n) are enumerated up to conjugacy by extension. Every
subgroup K > 1 has a maximal subgroup H and an element y of prime-power
order with y outside H and y^p in H; then K = <H, y>. Starting from the
trivial group, each class representative H is extended by one such y per
N(H)-orbit on the cosets Hy, and a new subgroup is kept unless a known
representative with the same invariants is conjugate to it.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, Iterator

import numpy as np
from sympy import factorint

from . import config
from .abelian import (
    AbelianGroup,
    abelian_groups_of_order,
    adapted_basis,
    aut_centralizer_is_trivial,
    root_adapted_basis_exists,
)
from .automorphisms import (
    aut_perm,
    aut_perm_via_normaliser,
    automorphism_group,
    automorphisms_fixing,
    maol,
    maol_perm,
)
from .constructors import (
    abelian_regular,
    alternating_natural,
    cyclic_regular,
    dicyclic_table,
    dihedral_natural,
    regular_representation,
    sl2_3_table,
    symmetric_natural,
    table1_expected,
    table1_pair,
    table_direct_product,
)
from .errors import CapExceededError, MaolpermError
from .group import PermutationGroup, SubgroupHandle, core_is_trivial, generators_for, is_soluble
from .perm import Permutation, conjugate
from .report import VerificationReport, skipped, timed, verdict
from .table import GroupTable

logger = logging.getLogger(__name__)

CENSUS_ALGORITHM_VERSION = "1"
SOLUBILITY_THRESHOLD = 23


def _check_degree(n: int, max_degree: int | None) -> None:
    limit = min(config.MAX_DEGREE if max_degree is None else max_degree, config.HARD_MAX_DEGREE)
    if n < 1:
        raise MaolpermError(f"degree must be >= 1, got {n}")
    if n > limit:
        raise CapExceededError("census degree", n, limit)


def _class_key(type_ids: np.ndarray, n_types: int, members: np.ndarray) -> tuple[int, ...]:
    """Order plus the number of members of each cycle type; conjugate subgroups share it."""
    return (len(members), *np.bincount(type_ids[members], minlength=n_types).tolist())


def _conjugate_into(table: GroupTable, mask: np.ndarray, members: np.ndarray) -> bool:
    """Whether some conjugate of the subgroup with these members lies in mask."""
    return bool(mask[table.conjugation[:, members]].all(axis=1).any())


def _canonical_members(table: GroupTable, members: np.ndarray) -> np.ndarray:
    """Lexicographically least sorted member list among all conjugates."""
    rows = np.sort(table.conjugation[:, members], axis=1)
    candidates = np.arange(rows.shape[0])
    for col in range(rows.shape[1]):
        values = rows[candidates, col]
        candidates = candidates[values == values.min()]
        if candidates.size == 1:
            break
    return rows[candidates[0]].astype(np.int64)


def _extension_elements(table: GroupTable, mask: np.ndarray, eligible: np.ndarray, pth: np.ndarray) -> Iterator[int]:
    """One y per N(H)-orbit of cosets Hy with y of prime-power order and y^p in H."""
    members = np.flatnonzero(mask)
    conj = table.conjugation
    normaliser = np.flatnonzero(mask[conj[:, members]].all(axis=1))
    covered = mask.copy()
    for y in np.flatnonzero(eligible & ~mask & mask[pth]):
        if covered[y]:
            continue
        images = np.unique(conj[normaliser, y])
        covered[table.mul[np.ix_(members, images)].ravel()] = True
        yield int(y)


@lru_cache(maxsize=None)
def _subgroup_classes(n: int) -> tuple[PermutationGroup, tuple[np.ndarray, ...]]:
    sym = symmetric_natural(n)
    table = sym.table(math.factorial(n))
    types: dict[tuple[int, ...], int] = {}
    type_ids = np.array([types.setdefault(p.cycle_type(), len(types)) for p in table.elements], dtype=np.int64)

    orders = table.element_orders
    prime_of = np.zeros(table.order, dtype=np.int64)
    for o in np.unique(orders):
        f = factorint(int(o))
        if len(f) == 1:
            prime_of[orders == o] = next(iter(f))
    pth = np.zeros(table.order, dtype=np.int64)
    for p in np.unique(prime_of[prime_of > 0]):
        sel = prime_of == p
        pth[sel] = table.power_map(int(p))[sel]
    eligible = prime_of > 0

    reps: list[tuple[np.ndarray, list[int]]] = [(table.closure([]), [])]
    buckets: dict[tuple[int, ...], list[int]] = {_class_key(type_ids, len(types), np.array([0])): [0]}
    i = 0
    while i < len(reps):
        mask, gens = reps[i]
        i += 1
        for y in _extension_elements(table, mask, eligible, pth):
            grown = table.closure([*gens, y])
            members = np.flatnonzero(grown)
            bucket = buckets.setdefault(_class_key(type_ids, len(types), members), [])
            if any(_conjugate_into(table, reps[j][0], members) for j in bucket):
                continue
            bucket.append(len(reps))
            reps.append((grown, [*gens, y]))
        logger.debug(f"Sym({n}) lattice: {i}/{len(reps)} classes extended")

    canonical = [_canonical_members(table, np.flatnonzero(mask)) for mask, _ in reps]
    canonical.sort(key=lambda m: (len(m), m.tolist()))
    logger.info(f"Sym({n}): {len(canonical)} conjugacy classes of subgroups")
    return sym, tuple(canonical)


def all_subgroups_up_to_conjugacy(n: int, max_degree: int | None = None) -> list[SubgroupHandle]:
    """One subgroup of Sym(n) per conjugacy class, by order and then canonical member list."""
    _check_degree(n, max_degree)
    sym, classes = _subgroup_classes(n)
    table = sym.table()
    return [
        SubgroupHandle(sym, tuple(generators_for(n, (table.elements[int(x)] for x in members))))
        for members in classes
    ]


@dataclass(frozen=True)
class CensusEntry:
    degree: int
    group: PermutationGroup
    order: int
    maol_perm: int
    soluble: bool
    name: str | None = None

    @property
    def label(self) -> str:
        return self.name or f"T{self.degree}[order {self.order}]<{','.join(map(str, self.group.generators))}>"

    def to_dict(self) -> dict[str, Any]:
        return {
            "degree": self.degree,
            "generators": [str(g) for g in self.group.generators],
            "order": self.order,
            "maol_perm": self.maol_perm,
            "soluble": self.soluble,
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CensusEntry:
        degree = int(data["degree"])
        gens = [Permutation.parse(g, degree) for g in data["generators"]]
        group = PermutationGroup(degree, gens, name=data.get("name") or "")
        return cls(degree, group, int(data["order"]), int(data["maol_perm"]), bool(data["soluble"]), data.get("name"))


def _entry_stats(degree: int, generator_images: list[tuple[int, ...]]) -> tuple[int, bool]:
    """maol_perm (via the normaliser) and solubility; top level so worker processes can run it."""
    group = PermutationGroup(degree, [Permutation(g) for g in generator_images])
    return aut_perm_via_normaliser(group).max_orbit_length(), is_soluble(group)


def _cache_file(cache_dir: Path, degree: int) -> Path:
    return cache_dir / f"transitive-{degree}.json"


def _load_cache(cache_dir: Path | None, degree: int) -> list[CensusEntry] | None:
    if cache_dir is None:
        return None
    path = _cache_file(cache_dir, degree)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        logger.warning(f"ignoring unreadable census cache {path}: {e}")
        return None
    if data.get("version") != CENSUS_ALGORITHM_VERSION or data.get("degree") != degree:
        logger.warning(f"census cache {path} has version {data.get('version')}, expected {CENSUS_ALGORITHM_VERSION}")
        return None
    logger.info(f"census cache hit for degree {degree}")
    return [CensusEntry.from_dict(e) for e in data["entries"]]


def _store_cache(cache_dir: Path | None, degree: int, entries: list[CensusEntry]) -> None:
    if cache_dir is None:
        return
    cache_dir.mkdir(parents=True, exist_ok=True)
    payload = {"version": CENSUS_ALGORITHM_VERSION, "degree": degree, "entries": [e.to_dict() for e in entries]}
    _cache_file(cache_dir, degree).write_text(json.dumps(payload, indent=1))


def transitive_groups(
    degree: int,
    max_degree: int | None = None,
    workers: int | None = None,
    cache_dir: Path | None = None,
) -> list[CensusEntry]:
    """Transitive subgroups of Sym(degree) up to conjugacy, with maol_perm and solubility.

    Args:
        degree: The degree n of Sym(n).
        max_degree: Largest degree accepted; defaults to config.MAX_DEGREE, never above the hard limit.
        workers: Processes used for the per-group statistics; defaults to config.WORKERS.
        cache_dir: Directory of JSON census caches; defaults to config.CACHE_DIR.

    Returns:
        One CensusEntry per conjugacy class, named when it is a listed small group.

    Raises:
        MaolpermError: If degree < 1.
        CapExceededError: If degree exceeds max_degree.
    """
    _check_degree(degree, max_degree)
    cache_dir = cache_dir if cache_dir is not None else (Path(config.CACHE_DIR) if config.CACHE_DIR else None)
    cached = _load_cache(cache_dir, degree)
    if cached is not None:
        return cached

    sym, classes = _subgroup_classes(degree)
    table = sym.table()
    groups = []
    for members in classes:
        if len({table.elements[int(x)].images[0] for x in members}) != degree:
            continue
        gens = generators_for(degree, (table.elements[int(x)] for x in members))
        groups.append(PermutationGroup(degree, gens))

    workers = config.WORKERS if workers is None else workers
    args = [[g.images for g in group.generators] for group in groups]
    if workers > 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(_entry_stats, itertools.repeat(degree), args))
    else:
        stats = [_entry_stats(degree, a) for a in args]

    named = [g for g in named_transitive_groups(degree) if g.group.degree == degree]
    entries = []
    for group, (value, soluble) in zip(groups, stats):
        name = next((g.name for g in named if permutation_isomorphic(group, g.group)), None)
        if name:
            group.name = name
        entries.append(CensusEntry(degree, group, group.order(), value, soluble, name))
    logger.info(f"degree {degree}: {len(entries)} transitive groups")
    _store_cache(cache_dir, degree, entries)
    return entries


def permutation_isomorphic(g: PermutationGroup, h: PermutationGroup) -> bool:
    """Whether g and h are conjugate in Sym(degree), by scanning Sym(degree)."""
    if g.degree != h.degree or g.order() != h.order():
        return False
    if sorted(map(len, g.orbits())) != sorted(map(len, h.orbits())):
        return False
    if g.degree > config.HARD_MAX_DEGREE:
        raise CapExceededError("conjugacy scan degree", g.degree, config.HARD_MAX_DEGREE)
    gens = [x for x in g.generators if not x.is_identity()]
    for images in itertools.permutations(range(g.degree)):
        s = Permutation(images)
        if all(h.contains(conjugate(x, s)) for x in gens):
            return True
    return False


@dataclass(frozen=True)
class NamedGroup:
    name: str
    group: PermutationGroup
    maol_perm: int


def named_transitive_groups(max_degree: int = 6) -> list[NamedGroup]:
    """The transitive groups with maol_perm <= 3, with their maol_perm values."""
    listed = [
        ("Z/1 reg", 1, lambda: PermutationGroup(1, []), 1),
        ("Z/2 reg", 2, lambda: cyclic_regular(2), 1),
        ("Z/3 reg", 3, lambda: cyclic_regular(3), 2),
        ("Z/4 reg", 4, lambda: cyclic_regular(4), 2),
        ("Z/6 reg", 6, lambda: cyclic_regular(6), 2),
        ("(Z/2)^2 reg", 4, lambda: abelian_regular([2, 2]), 3),
        ("Sym(3) reg", 6, lambda: regular_representation(symmetric_natural(3).table()), 3),
        ("D8", 4, lambda: dihedral_natural(4), 2),
        ("D6", 3, lambda: dihedral_natural(3), 3),
        ("D12", 6, lambda: dihedral_natural(6), 3),
    ]
    out = []
    for name, degree, build, value in listed:
        if degree <= max_degree:
            group = build()
            group.name = name
            out.append(NamedGroup(name, group, value))
    return out


def classify(max_degree: int = 6, threshold: int = 3, **census: Any) -> list[CensusEntry]:
    """Census entries of degree <= max_degree with maol_perm <= threshold."""
    return [
        e
        for d in range(1, max_degree + 1)
        for e in transitive_groups(d, max_degree=max_degree, **census)
        if e.maol_perm <= threshold
    ]


def verify_theorem_1_1_part1(max_degree: int = 6, threshold: int = 3, **census: Any) -> list[VerificationReport]:
    """Per degree, the survivors with maol_perm <= threshold against the listed groups.

    Args:
        max_degree: Largest degree classified.
        threshold: maol_perm cut-off; above 3 there is no reference list and reports are skipped.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        One report per degree; a failure lists the missing and unexpected groups.
    """
    named = named_transitive_groups(max_degree)
    reports = []
    for d in range(1, max_degree + 1):
        with timed(f"classify degree {d}") as t:
            survivors = [e for e in transitive_groups(d, max_degree=max_degree, **census) if e.maol_perm <= threshold]
        computed = sorted((e.label, e.maol_perm) for e in survivors)
        check = f"degree {d}: transitive groups with maol_perm <= {threshold}"
        if threshold > 3:
            reports.append(VerificationReport(check, "skipped", None, computed, {}, t.elapsed,
                                              {"reason": "no reference list above threshold 3"}))
            continue
        expected = sorted((g.name, g.maol_perm) for g in named if g.group.degree == d and g.maol_perm <= threshold)
        witness = {"missing": sorted(set(expected) - set(computed)), "unexpected": sorted(set(computed) - set(expected))}
        reports.append(verdict(check, expected, computed, witness if expected != computed else None, t.elapsed))
    return reports


def verify_theorem_1_1_part4(max_degree: int = 6, **census: Any) -> list[VerificationReport]:
    """maol_perm <= 23 forces solubility on the census; Alt(5) natural sits at 24.

    Args:
        max_degree: Largest census degree checked.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        One report per degree, then the Alt(5) and Sym(5) reports.
    """
    reports = []
    for d in range(1, max_degree + 1):
        with timed(f"solubility degree {d}") as t:
            bad = [e.label for e in transitive_groups(d, max_degree=max_degree, **census)
                   if e.maol_perm <= SOLUBILITY_THRESHOLD and not e.soluble]
        reports.append(verdict(f"degree {d}: maol_perm <= 23 implies soluble", [], bad,
                               {"insoluble": bad} if bad else None, t.elapsed))
    with timed("Alt(5)") as t:
        alt5 = alternating_natural(5)
        computed = {"maol_perm": maol_perm(alt5), "soluble": is_soluble(alt5)}
    reports.append(verdict("Alt(5) natural: maol_perm and solubility", {"maol_perm": 24, "soluble": False},
                           computed, wall_time=t.elapsed))
    with timed("Sym(5)") as t:
        value = maol_perm(symmetric_natural(5))
    reports.append(verdict("Sym(5) natural: maol_perm > 23", True, value > SOLUBILITY_THRESHOLD,
                           {"maol_perm": value} if value <= SOLUBILITY_THRESHOLD else None, t.elapsed,
                           maol_perm=value))
    return reports


def table1_facts(row: int) -> dict[str, Any]:
    """Structure of the row's pair: sizes plus the elimination facts on G_w and its image P in G/G'."""
    pair = table1_pair(row)
    table = pair.abstract.table()
    stab = np.flatnonzero(table.closure(table.index[g] for g in pair.abstract_stabilizer.generators))
    derived = table.derived_mask
    centre = table.centre_mask
    quotient, coset_of = table.quotient(derived)
    p_ids = sorted({int(coset_of[x]) for x in stab})
    stab_derived = table.closure(table.commutator(int(x), int(y)) for x in stab for y in stab)
    stab_abelianization = len(stab) // int(stab_derived.sum())
    return {
        "pair": pair,
        "degree": pair.group.degree,
        "group_order": table.order,
        "stabilizer_order": len(stab),
        "core_free": core_is_trivial(pair.abstract, pair.abstract_stabilizer),
        "direct_product": int(centre.sum()) * int(derived.sum()) == table.order
        and not (centre & derived)[1:].any(),
        "derived_order": int(derived.sum()),
        "p_order": len(p_ids),
        "p_is_quotient_of_abelianization": bool(derived[np.flatnonzero(stab_derived)].all())
        and stab_abelianization % len(p_ids) == 0,
        "p_centralizer_trivial": len(automorphisms_fixing(quotient, p_ids, first_nontrivial=True)) == 0,
    }


def verify_table1_row(row: int) -> VerificationReport:
    """Rebuild one table1 pair and check its sizes, elimination facts and maol_perm.

    Args:
        row: Row number, 1 to 11.

    Returns:
        A report carrying every computed fact in its details; a failure names
        the facts that disagree.

    Raises:
        InvalidParameterError: If row is out of range.
    """
    spec = table1_expected(row)
    with timed(f"table1 row {row}") as t:
        facts = table1_facts(row)
        pair = facts.pop("pair")
        auts = aut_perm(pair.group)
        value = auts.max_orbit_length()
    facts["aut_perm_order"] = len(auts)
    facts["structure"] = spec.structure
    facts["stabilizer"] = spec.stabilizer_text
    problems = {}
    if facts["group_order"] != spec.group_order or facts["stabilizer_order"] != spec.stabilizer_order:
        problems["orders"] = [facts["group_order"], facts["stabilizer_order"]]
    for fact in ("core_free", "direct_product", "p_is_quotient_of_abelianization", "p_centralizer_trivial"):
        if not facts[fact]:
            problems[fact] = False
    if facts["p_order"] <= 1:
        problems["p_order"] = facts["p_order"]
    if value != spec.maol_perm:
        problems["maol_perm"] = value
    check = f"row {row}"
    if problems:
        return VerificationReport(check, "fail", spec.maol_perm, value, problems, t.elapsed, facts)
    return VerificationReport(check, "pass", spec.maol_perm, value, {}, t.elapsed, facts)


def verify_table1(rows: Iterable[int] | None = None) -> list[VerificationReport]:
    """verify_table1_row over rows.

    Args:
        rows: Row numbers to check; all eleven when None.

    Returns:
        One report per row, in the order given.
    """
    rows =range(1, 12) if rows is None else rows
    return [verify_table1_row(r) for r in rows]


def regular_corpus(max_order: int = 24) -> list[tuple[str, GroupTable]]:
    """Abstract groups of order <= max_order used for the regular-representation checks."""
    corpus: list[tuple[str, GroupTable]] = []
    for n in range(2, max_order + 1):
        for a in abelian_groups_of_order(n):
            corpus.append((str(a), a.to_table()))
    for k in range(3, max_order // 2 + 1):
        corpus.append((f"D{2 * k}", dihedral_natural(k).table()))
    for k in range(2, max_order // 4 + 1):
        t = dicyclic_table(k)
        corpus.append((t.label, t))
    extras = [("Alt(4)", 12, lambda: alternating_natural(4).table()), ("Sym(4)", 24, lambda: symmetric_natural(4).table()),
              ("SL(2,3)", 24, sl2_3_table)]
    for label, size, build in extras:
        if size <= max_order:
            corpus.append((label, build()))
    factors = [("D8", lambda: dihedral_natural(4).table()), ("Q8", lambda: dicyclic_table(2)),
               ("Sym(3)", lambda: symmetric_natural(3).table()), ("Alt(4)", lambda: alternating_natural(4).table()),
               ("Dic(3)", lambda: dicyclic_table(3))]
    small = {2: AbelianGroup.from_invariants([2]), 3: AbelianGroup.from_invariants([3]),
             4: AbelianGroup.from_invariants([4])}
    for (label, build), (m, cyc) in itertools.product(factors, small.items()):
        left = build()
        if left.order * m <= max_order:
            product = table_direct_product(left, cyc.to_table())
            corpus.append((f"{label} x Z/{m}", product))
    return corpus


def _realised_by_normaliser(group: PermutationGroup, images: np.ndarray) -> bool:
    """For regular G: the point map 0^g -> 0^(g alpha) normalises G and induces alpha."""
    table = group.table()
    points = [table.elements[x].images[0] for x in range(table.order)]
    s = [0] * group.degree
    for x in range(table.order):
        s[points[x]] = points[int(images[x])]
    s_perm = Permutation(tuple(s))
    return all(
        conjugate(table.elements[g], s_perm) == table.elements[int(images[g])] for g in table.generators
    )


def verify_regular_lemmas(max_order: int = 24, max_degree: int = 6, **census: Any) -> list[VerificationReport]:
    """Aut_perm = Aut and maol_perm = maol for regular groups; transitive abelian groups are regular.

    Args:
        max_order: Largest group in the regular corpus.
        max_degree: Largest census degree scanned for transitive abelian groups.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        One report per corpus group, then one per census degree.
    """
    reports = []
    for label, table in regular_corpus(max_order):
        check = f"regular {label}: Aut_perm = Aut"
        group = regular_representation(table, f"{label} reg")
        try:
            with timed(check) as t:
                perm_table = group.table()
                full = automorphism_group(perm_table)
                induced = aut_perm(group)
                realised = all(_realised_by_normaliser(group, row) for row in full.generators())
                computed = {"same_maps": induced.same_maps(full), "normaliser_realises_all": realised,
                            "maol_perm_equals_maol": induced.max_orbit_length() == full.max_orbit_length()}
        except CapExceededError as e:
            reports.append(skipped(check, e.message))
            continue
        expected = {"same_maps": True, "normaliser_realises_all": True, "maol_perm_equals_maol": True}
        reports.append(verdict(check, expected, computed, wall_time=t.elapsed, aut_order=len(full)))
    for d in range(1, max_degree + 1):
        with timed(f"abelian degree {d}") as t:
            bad = [e.label for e in transitive_groups(d, max_degree=max_degree, **census)
                   if e.group.is_abelian() and not e.group.is_regular()]
        reports.append(verdict(f"degree {d}: transitive abelian implies regular", [], bad,
                               {"not_regular": bad} if bad else None, t.elapsed))
    return reports


def verify_normaliser_lemma(max_degree: int = 6, **census: Any) -> list[VerificationReport]:
    """Automorphisms preserving the point-stabilizer class are exactly those induced by the normaliser.

    Args:
        max_degree: Largest census degree checked.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        One report per degree, failing with the labels of groups where the two routes disagree.

    Raises:
        CapExceededError: If an automorphism set exceeds config.AUTSET_CAP.
    """
    reports = []
    for d in range(1, max_degree + 1):
        with timed(f"normaliser degree {d}") as t:
            bad = []
            entries = transitive_groups(d, max_degree=max_degree, **census)
            for e in entries:
                via_stabilizer = aut_perm(e.group, cap=max(config.AUT_ORDER_CAP, e.order))
                if not via_stabilizer.same_maps(aut_perm_via_normaliser(e.group)):
                    bad.append(e.label)
        reports.append(verdict(f"degree {d}: Aut_perm via stabilizers = via normaliser", [], bad,
                               {"disagree": bad} if bad else None, t.elapsed, groups=len(entries)))
    return reports


def verify_maol_bounds(max_degree: int = 6, **census: Any) -> list[VerificationReport]:
    """Check max class length <= maol_perm <= maol on every transitive group of the census.

    Args:
        max_degree: Largest degree checked; every degree from 1 up gets one report.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        One report per degree, failing with the offending group labels as witness.

    Raises:
        CapExceededError: If a group's multiplication table exceeds the table cap.
    """
    reports = []
    for d in range(1, max_degree + 1):
        with timed(f"maol bounds degree {d}") as t:
            bad = []
            entries = transitive_groups(d, max_degree=max(max_degree, d), **census)
            for e in entries:
                table = e.group.table()
                full = maol(table, cap=max(config.AUT_ORDER_CAP, e.order))
                if not int(table.class_sizes.max()) <= e.maol_perm <= full:
                    bad.append(e.label)
        reports.append(verdict(f"degree {d}: class length <= maol_perm <= maol", [], bad,
                               {"violations": bad} if bad else None, t.elapsed, groups=len(entries)))
    return reports


def verify_centralizer_lemma(max_order: int = 64) -> list[VerificationReport]:
    """The centraliser criterion against an automorphism search, for every proper B < A.

    Args:
        max_order: Largest abelian group A enumerated.

    Returns:
        One report per A, counting the subgroups B where criterion and search agree.
    """
    reports = []
    for n in range(2, max_order + 1):
        for a in abelian_groups_of_order(n):
            with timed(str(a)) as t:
                table = a.to_table()
                subs = [s for s in a.subgroups() if len(s) < a.order]
                mismatches = []
                for b in subs:
                    predicted = aut_centralizer_is_trivial(a, b).trivial
                    searched = len(automorphisms_fixing(table, [table.index[v] for v in b], first_nontrivial=True)) == 0
                    if predicted != searched:
                        mismatches.append(sorted(b))
            reports.append(verdict(f"{a}: centraliser criterion", len(subs), len(subs) - len(mismatches),
                                   {"subgroups": mismatches[:5]} if mismatches else None, t.elapsed))
    return reports


def _subspaces(p: int, r: int) -> Iterator[list[tuple[int, ...]]]:
    """Every subspace of F_p^r, as the rows of its reduced echelon basis."""
    for k in range(r + 1):
        for pivots in itertools.combinations(range(r), k):
            free = [(i, j) for i, piv in enumerate(pivots) for j in range(piv + 1, r) if j not in pivots]
            for values in itertools.product(range(p), repeat=len(free)):
                rows = [[0] * r for _ in range(k)]
                for i, piv in enumerate(pivots):
                    rows[i][piv] = 1
                for (i, j), v in zip(free, values):
                    rows[i][j] = v
                yield [tuple(row) for row in rows]


def verify_adapted_basis_lemma(
    max_order: int = 729, primes: tuple[int, ...] = (2, 3), max_socle_rank: int = 6
) -> list[VerificationReport]:
    """Adapted bases for every elementary abelian B <= A over abelian p-groups A, plus the root counterexample.

    Args:
        max_order: Largest p-group A enumerated.
        primes: Primes p to run.
        max_socle_rank: Groups of larger rank are skipped.

    Returns:
        One report per A, counting the subgroups B with an adapted basis, then
        one report per p for the group without a root-adapted basis.
    """
    reports = []
    for p in primes:
        k = 1
        while p**k <= max_order:
            for a in abelian_groups_of_order(p**k):
                check = f"{a}: adapted bases"
                if a.rank > max_socle_rank:
                    reports.append(skipped(check, f"socle rank {a.rank} above {max_socle_rank}"))
                    continue
                socle = [a.scale(p ** (e - 1), a.unit(i)) for i, e in enumerate(a.exponents)]
                count, failures = 0, []
                with timed(check) as t:
                    for rows in _subspaces(p, a.rank):
                        gens = [a.combine(row, socle) for row in rows]
                        count += 1
                        try:
                            adapted_basis(a, a.span(gens))
                        except MaolpermError as e:
                            failures.append({"generators": gens, "error": e.message})
                reports.append(verdict(check, count, count - len(failures),
                                       {"failures": failures[:5]} if failures else None, t.elapsed))
            k += 1
    for p in (2, 3):
        a = AbelianGroup.p_group(p, [3, 1])
        b = a.span([(p, 1)])
        reports.append(verdict(f"{a}: no root-adapted basis for <p a_1 + a_2>", False,
                               root_adapted_basis_exists(a, b)))
    return reports
