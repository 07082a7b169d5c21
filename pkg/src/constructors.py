"""Named groups, representations and the eleven insoluble (G, G_w) pairs."""

from __future__ import annotations

import itertools
import json
import logging
import re
from dataclasses import dataclass, field
from functools import cache
from importlib import resources
from typing import Any, Sequence

import jsonschema
import numpy as np

from . import config
from .automorphisms import GroupMap
from .errors import CapExceededError, GroupSpecError, InvalidParameterError
from .group import PermutationGroup, SubgroupHandle
from .perm import Permutation
from .table import GroupTable

logger = logging.getLogger(__name__)


def cyclic_regular(m: int) -> PermutationGroup:
    """Z/m acting on itself by right addition."""
    if m < 1:
        raise InvalidParameterError(f"cyclic order must be >= 1, got {m}")
    gens = [Permutation(tuple((i + 1) % m for i in range(m)))] if m > 1 else []
    return PermutationGroup(m, gens, name=f"Z/{m} reg")


def abelian_regular(factors: Sequence[int]) -> PermutationGroup:
    """Z/m_1 x ... x Z/m_k in its regular representation.

    Points are mixed-radix vectors; generator i adds the i-th unit vector.
    """
    factors = list(factors)
    if any(m < 2 for m in factors):
        raise InvalidParameterError(f"factor orders must be >= 2, got {factors}")
    points = list(itertools.product(*(range(m) for m in factors)))
    index = {p: i for i, p in enumerate(points)}
    gens = []
    for k, m in enumerate(factors):
        images = []
        for p in points:
            q = list(p)
            q[k] = (q[k] + 1) % m
            images.append(index[tuple(q)])
        gens.append(Permutation(tuple(images)))
    name = " x ".join(f"Z/{m}" for m in factors) or "1"
    return PermutationGroup(len(points), gens, name=f"({name}) reg")


def dihedral_natural(n: int) -> PermutationGroup:
    """Symmetries of the regular n-gon acting on its vertices."""
    if n < 3:
        raise InvalidParameterError(f"dihedral natural action needs n >= 3, got {n}")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return PermutationGroup(n, [rotation, reflection], name=f"D{2 * n}")


def symmetric_natural(n: int) -> PermutationGroup:
    if n < 1:
        raise InvalidParameterError(f"degree must be >= 1, got {n}")
    if n == 1:
        return PermutationGroup(1, [], name="Sym(1)")
    gens = [Permutation.from_cycles(n, [list(range(n))]), Permutation.from_cycles(n, [[0, 1]])]
    return PermutationGroup(n, gens, name=f"Sym({n})")


def alternating_natural(n: int) -> PermutationGroup:
    if n < 1:
        raise InvalidParameterError(f"degree must be >= 1, got {n}")
    if n < 3:
        return PermutationGroup(n, [], name=f"Alt({n})")
    long_cycle = list(range(n)) if n % 2 else list(range(1, n))
    gens = [Permutation.from_cycles(n, [[0, 1, 2]]), Permutation.from_cycles(n, [long_cycle])]
    return PermutationGroup(n, gens, name=f"Alt({n})")


@dataclass(frozen=True)
class DirectProduct:
    """G x H on the disjoint union of the two domains, G's points first."""

    group: PermutationGroup
    left_degree: int
    right_degree: int

    def left(self, p: Permutation) -> Permutation:
        return Permutation(p.images + tuple(range(self.left_degree, self.left_degree + self.right_degree)))

    def right(self, q: Permutation) -> Permutation:
        return Permutation(tuple(range(self.left_degree)) + tuple(x + self.left_degree for x in q.images))

    def pair(self, p: Permutation, q: Permutation) -> Permutation:
        return Permutation(p.images + tuple(x + self.left_degree for x in q.images))


def direct_product(g: PermutationGroup, h: PermutationGroup) -> DirectProduct:
    shell = DirectProduct(PermutationGroup(1, []), g.degree, h.degree)
    gens = [shell.left(x) for x in g.generators] + [shell.right(y) for y in h.generators]
    name = f"{g.name or 'G'} x {h.name or 'H'}"
    return DirectProduct(PermutationGroup(g.degree + h.degree, gens, name=name), g.degree, h.degree)


def regular_representation(table: GroupTable, name: str = "") -> PermutationGroup:
    """Right-regular representation: generator g sends x to x*g."""
    gens = [Permutation(tuple(int(v) for v in table.mul[:, g])) for g in table.generators]
    return PermutationGroup(table.order, gens, name=name or f"{table.label} reg")


@dataclass(frozen=True)
class CosetAction:
    """Action of G on the right cosets of H.

    Point i is the coset H*reps[i]; point 0 is H itself, so the image of H
    is the stabilizer of 0.
    """

    group: PermutationGroup
    epimorphism: GroupMap
    point: int
    representatives: tuple[int, ...] = field(repr=False)


def coset_action(group: PermutationGroup, sub: SubgroupHandle, cap: int | None = None, name: str = "") -> CosetAction:
    cap = config.TABLE_CAP if cap is None else cap
    if group.order() > cap:
        raise CapExceededError("coset action", group.order(), cap)
    table = group.table(cap)
    h_members = np.flatnonzero(table.closure(table.index[x] for x in sub.generators))
    coset_of = np.full(table.order, -1, dtype=np.int64)
    coset_of[h_members] = 0
    reps = [0]
    queue = [0]
    # cosets numbered in BFS order from H over the generators
    for c in queue:
        for g in table.generators:
            y = int(table.mul[reps[c], g])
            if coset_of[y] < 0:
                coset_of[table.mul[h_members, y]] = len(reps)
                queue.append(len(reps))
                reps.append(y)
    degree = len(reps)
    # column x is the permutation induced by element x
    action = coset_of[table.mul[reps, :]]
    gens = [Permutation(tuple(int(v) for v in action[:, g])) for g in table.generators]
    image = PermutationGroup(degree, gens, name=name or f"{group.name or 'G'} on cosets")
    image_table = image.table(cap)
    images = [image_table.index[Permutation(tuple(int(v) for v in action[:, x]))] for x in range(table.order)]
    epi = GroupMap.from_images(table, images, target=image_table, label="coset action")
    logger.debug(f"coset action: degree {degree}, image order {image_table.order}")
    return CosetAction(image, epi, 0, tuple(reps))


@dataclass(frozen=True)
class Table1Row:
    row: int
    cyclic: tuple[int, ...]
    stabilizer: tuple[tuple[tuple[int, ...], str], ...]
    maol_perm: int
    structure: str
    stabilizer_text: str
    group_order: int
    stabilizer_order: int
    stabilizer_type: str


# Each stabilizer generator: (element of the abelian factor, Alt(5) part in cycle notation).
TABLE1_ROWS: tuple[Table1Row, ...] = (
    Table1Row(1, (3,), (((1,), "(1,2,3)"),), 48, "Z/3 x Alt(5)", "<(1,(1,2,3))>", 180, 3, "Z/3"),
    Table1Row(2, (6,), (((2,), "(1,2,3)"),), 48, "Z/6 x Alt(5)", "<(2,(1,2,3))>", 360, 3, "Z/3"),
    Table1Row(3, (3,), (((0,), "(1,2)(3,4)"), ((1,), "(1,2,3)")), 40, "Z/3 x Alt(5)",
              "<(0,(1,2)(3,4)),(1,(1,2,3))>", 180, 12, "Alt(4)"),
    Table1Row(4, (6,), (((0,), "(1,2)(3,4)"), ((2,), "(1,2,3)")), 40, "Z/6 x Alt(5)",
              "<(0,(1,2)(3,4)),(2,(1,2,3))>", 360, 12, "Alt(4)"),
    Table1Row(5, (5,), (((1,), "(1,2,3,4,5)"),), 80, "Z/5 x Alt(5)", "<(1,(1,2,3,4,5))>", 300, 5, "Z/5"),
    Table1Row(6, (10,), (((2,), "(1,2,3,4,5)"),), 80, "Z/10 x Alt(5)", "<(2,(1,2,3,4,5))>", 600, 5, "Z/5"),
    Table1Row(7, (2,), (((1,), "(1,2)(3,4)"),), 24, "Z/2 x Alt(5)", "<(1,(1,2)(3,4))>", 120, 2, "Z/2"),
    Table1Row(8, (2,), (((0,), "(1,2,3)"), ((1,), "(2,3)(4,5)")), 24, "Z/2 x Alt(5)",
              "<(0,(1,2,3)),(1,(2,3)(4,5))>", 120, 6, "Sym(3)"),
    Table1Row(9, (2,), (((0,), "(1,2,3,4,5)"), ((1,), "(2,5)(3,4)")), 24, "Z/2 x Alt(5)",
              "<(0,(1,2,3,4,5)),(1,(2,5)(3,4))>", 120, 10, "D10"),
    Table1Row(10, (2,), (((0,), "(1,2)(3,4)"), ((1,), "(1,3)(2,4)")), 24, "Z/2 x Alt(5)",
              "<(0,(1,2)(3,4)),(1,(1,3)(2,4))>", 120, 4, "(Z/2)^2"),
    Table1Row(11, (2, 2), (((1, 0), "(1,2)(3,4)"), ((0, 1), "(1,3)(2,4)")), 72, "(Z/2)^2 x Alt(5)",
              "<((1,0),(1,2)(3,4)),((0,1),(1,3)(2,4))>", 240, 4, "(Z/2)^2"),
)


def table1_expected(row: int) -> Table1Row:
    if not 1 <= row <= len(TABLE1_ROWS):
        raise InvalidParameterError(f"row must be in 1..{len(TABLE1_ROWS)}, got {row}")
    return TABLE1_ROWS[row - 1]


@dataclass(frozen=True)
class Table1Pair:
    row: int
    abstract: PermutationGroup
    abstract_stabilizer: SubgroupHandle
    action: CosetAction
    group: PermutationGroup
    stabilizer: SubgroupHandle


def table1_pair(row: int) -> Table1Pair:
    """The row's (G, G_w): A x Alt(5) acting on the cosets of the listed subgroup."""
    spec = table1_expected(row)
    abelian = abelian_regular(spec.cyclic)
    product = direct_product(abelian, alternating_natural(5))
    points = list(itertools.product(*(range(m) for m in spec.cyclic)))
    index = {p: i for i, p in enumerate(points)}
    stab_gens = []
    for vector, cycles in spec.stabilizer:
        # translation by the vector inside the regular abelian factor
        translate = Permutation(tuple(index[tuple((a + b) % m for a, b, m in zip(p, vector, spec.cyclic))] for p in points))
        stab_gens.append(product.pair(translate, Permutation.parse(cycles, 5)))
    sub = SubgroupHandle.of(product.group, stab_gens)
    action = coset_action(product.group, sub, name=spec.structure)
    image_stab = action.group.table().closure(
        action.epimorphism(product.group.table().index[g]) for g in stab_gens
    )
    image_table = action.group.table()
    stab_handle = SubgroupHandle.from_elements(
        action.group, (image_table.elements[i] for i in np.flatnonzero(image_stab))
    )
    return Table1Pair(row, product.group, sub, action, action.group, stab_handle)


@dataclass(frozen=True)
class GroupSpec:
    """A named construction with its parameters."""

    kind: str
    params: dict[str, Any]

    KINDS = ("cyclic-regular", "abelian-regular", "dihedral-natural", "sym-natural", "alt-natural",
             "direct-product", "coset-action", "raw-generators")

    def build(self) -> PermutationGroup:
        p = self.params
        match self.kind:
            case "cyclic-regular":
                return cyclic_regular(int(p["m"]))
            case "abelian-regular":
                return abelian_regular([int(x) for x in p["factors"]])
            case "dihedral-natural":
                return dihedral_natural(int(p["n"]))
            case "sym-natural":
                return symmetric_natural(int(p["n"]))
            case "alt-natural":
                return alternating_natural(int(p["n"]))
            case "direct-product":
                return direct_product(p["left"].build(), p["right"].build()).group
            case "coset-action":
                parent = p["group"].build()
                sub = SubgroupHandle.of(parent, p["subgroup"])
                return coset_action(parent, sub).group
            case "raw-generators":
                return PermutationGroup(int(p["degree"]), p["generators"])
        raise InvalidParameterError(f"unknown group kind {self.kind!r}; expected one of {', '.join(self.KINDS)}")


def dicyclic_table(n: int) -> GroupTable:
    """Dic(n) = <r, x | r^2n, x^2 = r^n, r^x = r^-1>, order 4n; Dic(2) is Q8.

    Elements are pairs (k, e) standing for r^k x^e.
    """
    if n < 2:
        raise InvalidParameterError(f"dicyclic needs n >= 2, got {n}")
    m = 2 * n

    def multiply(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        (k1, e1), (k2, e2) = u, v
        if not e1:
            return ((k1 + k2) % m, e2)
        # x r^k = r^-k x and x^2 = r^n
        return ((k1 - k2 + (n if e2 else 0)) % m, 1 - e2)

    label = "Q8" if n == 2 else f"Dic({n})"
    return GroupTable.from_generators((0, 0), [(1, 0), (0, 1)], multiply, label=label)


def sl2_3_table() -> GroupTable:
    """SL(2,3) as 2x2 matrices (a, b, c, d) over F_3."""

    def multiply(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
        a, b, c, d = u
        e, f, g, h = v
        return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)

    return GroupTable.from_generators((1, 0, 0, 1), [(1, 1, 0, 1), (1, 0, 1, 1)], multiply, label="SL(2,3)")


def table_direct_product(left: GroupTable, right: GroupTable) -> GroupTable:
    gens = [(g, 0) for g in left.generators] + [(0, h) for h in right.generators]

    def multiply(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        return (left.multiply(u[0], v[0]), right.multiply(u[1], v[1]))

    return GroupTable.from_generators((0, 0), gens, multiply, label=f"{left.label} x {right.label}")


PERM_RE = re.compile(r"(?:\([^()]*\))+")


@cache
def group_spec_schema() -> dict[str, Any]:
    text = resources.files("src").joinpath("schemas/group_spec.schema.json").read_text()
    return json.loads(text)


def _spec_from_json(data: dict[str, Any]) -> GroupSpec:
    kind = data["kind"]
    params = {k: v for k, v in data.items() if k != "kind"}
    match kind:
        case "direct-product":
            params = {"left": _spec_from_json(data["left"]), "right": _spec_from_json(data["right"])}
        case "coset-action":
            parent = _spec_from_json(data["group"])
            degree = parent.build().degree
            params = {"group": parent, "subgroup": [Permutation.parse(p.strip(), degree) for p in data["subgroup"]]}
        case "raw-generators":
            degree = data["degree"]
            params = {"degree": degree, "generators": [Permutation.parse(p.strip(), degree) for p in data["generators"]]}
    return GroupSpec(kind, params)


def group_spec_from_dict(data: Any) -> GroupSpec:
    """A GroupSpec from its JSON form.

    The object holds "kind" next to that kind's parameters, e.g.
    {"kind": "dihedral-natural", "n": 4}. Nested groups ("left", "right",
    "group") are group specs themselves; permutations are 1-based cycle strings.

    Raises:
        GroupSpecError: If data does not match the group spec schema or a
            permutation does not parse.
    """
    try:
        jsonschema.validate(data, group_spec_schema())
    except jsonschema.ValidationError as e:
        raise GroupSpecError(f"invalid JSON group spec: {e.message}") from None
    return _spec_from_json(data)


def parse_group_spec(text: str) -> PermutationGroup:
    """Parse a group spec and build the group.

    Two forms are accepted. A JSON object (see group_spec_from_dict), or
    "degree=<n>; gens=<perm>,<perm>,..." with 1-based cycle notation, where a
    permutation is a run of adjacent cycles and permutations are separated by
    commas outside parentheses.

    Raises:
        GroupSpecError: If the text does not parse.
        InvalidParameterError: If a named construction rejects its parameters.
    """
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise GroupSpecError(f"could not parse JSON group spec: {e.msg} at line {e.lineno}") from None
        return group_spec_from_dict(data).build()
    fields: dict[str, str] = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, sep, value = part.partition("=")
        if not sep:
            raise GroupSpecError(f"expected key=value, got {part.strip()!r}")
        fields[key.strip().lower()] = value.strip()
    if set(fields) != {"degree", "gens"}:
        raise GroupSpecError(f"group spec needs exactly degree= and gens=, got {sorted(fields)}")
    try:
        degree = int(fields["degree"])
    except ValueError:
        raise GroupSpecError(f"degree must be an integer, got {fields['degree']!r}") from None
    if degree < 1:
        raise GroupSpecError(f"degree must be positive, got {degree}")

    gens_text = fields["gens"]
    matches = list(PERM_RE.finditer(gens_text))
    leftover = PERM_RE.sub("", gens_text)
    if not matches or leftover.replace(",", "").strip():
        raise GroupSpecError(f"could not parse generators {gens_text!r}")
    gens = [Permutation.parse(m.group(0), degree) for m in matches]
    return GroupSpec("raw-generators", {"degree": degree, "generators": gens}).build()
