"""Order bounds in terms of orbit lengths, evaluated exactly or as certified log2 brackets.

frak_f(d, n) = 16^((n+1)d) * n^(2n^3 d^2 (5 + d + 4 n^3 log2 n) + 2n^3 + 4nd + 4d)
ledermann_neumann_bound(n) = n^(n (1 + floor(log2 n))) + 1
improved_bound(d, c) = c^(d c^d (1 + floor(d log2 c))) + 1

Exact integers are produced while the value fits in EXACT_BITS_LIMIT bits
and the exponent is an integer. Brackets come from mpmath interval
arithmetic, so every inequality check compares whole intervals.
"""

from __future__ import annotations

import logging
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, Iterator

import mpmath
from mpmath import iv

from .automorphisms import GroupLike, as_table, aut_perm, automorphism_group, min_generating_tuple
from .census import transitive_groups
from .constructors import TABLE1_ROWS, table1_pair
from .errors import InvalidParameterError
from .gn import gn_group, gn_permutation_group
from .group import PermutationGroup
from .report import VerificationReport, timed, verdict

logger = logging.getLogger(__name__)

EXACT_BITS_LIMIT = 10**6
LOG2_PREC = 160


@contextmanager
def _precision(bits: int = LOG2_PREC) -> Iterator[None]:
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def _endpoint(x) -> mpmath.mpf:
    """An interval endpoint as an mpf, without rounding to the default precision."""
    with mpmath.workprec(LOG2_PREC):
        return mpmath.mpf(x)


def _log2(n: int):
    """Interval containing log2 n."""
    with _precision():
        if n == 1:
            return iv.mpf(0)
        return iv.ln(iv.mpf(n)) / iv.ln(2)


@dataclass(frozen=True)
class BoundValue:
    """A bound with optional exact value and an interval holding its log2."""

    exact: int | None
    log2: Any

    @property
    def lower(self) -> mpmath.mpf:
        return _endpoint(self.log2.a)

    @property
    def upper(self) -> mpmath.mpf:
        return _endpoint(self.log2.b)

    def certifies(self, value: int) -> bool:
        """Whether value <= bound is proven."""
        if value < 1:
            raise InvalidParameterError(f"bounded quantities are positive, got {value}")
        if self.exact is not None:
            return value <= self.exact
        return _endpoint(_log2(value).b) <= self.lower

    def to_dict(self) -> dict[str, Any]:
        return {
            "exact": str(self.exact) if self.exact is not None else None,
            "log2_lower": mpmath.nstr(self.lower, 25),
            "log2_upper": mpmath.nstr(self.upper, 25),
        }

    def __str__(self) -> str:
        if self.exact is not None and self.exact.bit_length() <= 64:
            return str(self.exact)
        return f"2^[{mpmath.nstr(self.lower, 12)}, {mpmath.nstr(self.upper, 12)}]"


def _exact(value: int) -> BoundValue:
    return BoundValue(value, _log2(value))


def frak_f(d: int, n: int) -> BoundValue:
    """16^((n+1)d) * n^(2n^3 d^2 (5 + d + 4n^3 log2 n) + 2n^3 + 4nd + 4d).

    Args:
        d: Non-negative integer parameter.
        n: Positive integer parameter.

    Returns:
        The value with its log2 bracket; exact only when the exponent is integral
        and the value fits in EXACT_BITS_LIMIT bits.

    Raises:
        InvalidParameterError: If d < 0 or n < 1.
    """
    if d < 0 or n < 1:
        raise InvalidParameterError(f"frak_f needs d >= 0 and n >= 1, got d={d}, n={n}")
    n3 = n**3
    with _precision():
        lg = _log2(n)
        exponent = 2 * n3 * d * d * (5 + d + 4 * n3 * lg) + 2 * n3 + 4 * n * d + 4 * d
        log2 = 4 * (n + 1) * d + exponent * lg
    k = n.bit_length() - 1
    if d == 0 or n == 1 << k:
        # integral exponent: log2 n = k or the log term vanishes
        e = 2 * n3 * d * d * (5 + d + 4 * n3 * k) + 2 * n3 + 4 * n * d + 4 * d
        if 4 * (n + 1) * d + e * n.bit_length() <= EXACT_BITS_LIMIT:
            return BoundValue(16 ** ((n + 1) * d) * n**e, log2)
    return BoundValue(None, log2)


def ledermann_neumann_bound(n: int) -> BoundValue:
    if n < 1:
        raise InvalidParameterError(f"bound needs n >= 1, got {n}")
    floor_log = n.bit_length() - 1
    return _exact(n ** (n * (1 + floor_log)) + 1)


def improved_bound(d: int, c: int) -> BoundValue:
    if d < 0 or c < 1:
        raise InvalidParameterError(f"bound needs d >= 0 and c >= 1, got d={d}, c={c}")
    power = c**d
    floor_log = power.bit_length() - 1
    x = d * power * (1 + floor_log)
    if x * c.bit_length() <= EXACT_BITS_LIMIT:
        return _exact(c**x + 1)
    with _precision():
        main = x * _log2(c)
        # c^x < c^x + 1 <= 2 c^x
        log2 = main + iv.mpf([0, 1])
    return BoundValue(None, log2)


def _facts(group: PermutationGroup) -> dict[str, int]:
    cached = getattr(group, "_bound_facts", None)
    if cached is not None:
        return dict(cached)
    table = group.table()
    auts = aut_perm(group)
    facts = {
        "order": table.order,
        "d": min_generating_tuple(table)[0],
        "aut_perm_order": len(auts),
        "maol_perm": auts.max_orbit_length(),
        "derived_order": int(table.derived_mask.sum()),
    }
    group._bound_facts = facts
    return dict(facts)


def _check(name: str, holds: bool, facts: dict[str, Any], wall_time: float, **details: Any) -> VerificationReport:
    return verdict(name, True, holds, facts if not holds else None, wall_time, **facts, **details)


def check_ledneu_permutation(group: PermutationGroup) -> VerificationReport:
    """|G| <= frak_f(d(G), |Aut_perm(G)|)."""
    label = group.name or "G"
    with timed(label) as t:
        facts = _facts(group)
        bound = frak_f(facts["d"], facts["aut_perm_order"])
        holds = bound.certifies(facts["order"])
    return _check(f"{label}: |G| <= f(d, |Aut_perm|)", holds, facts, t.elapsed, bound=bound.to_dict())


def check_improved_abstract(group: GroupLike) -> VerificationReport:
    """|Aut(G)| <= maol(G)^d(G) and |G| <= improved_bound(d(G), maol(G))."""
    table = as_table(group)
    label = table.label or "G"
    with timed(label) as t:
        auts = automorphism_group(table)
        c = auts.max_orbit_length()
        d = min_generating_tuple(table)[0]
        bound = improved_bound(d, c)
        facts = {"order": table.order, "d": d, "maol": c, "aut_order": len(auts)}
        holds = len(auts) <= c**d and bound.certifies(table.order)
    return _check(f"{label}: |Aut| <= maol^d and |G| <= improved bound", holds, facts, t.elapsed,
                  bound=bound.to_dict())


def check_semiregular_count(group: PermutationGroup, c: int | None = None) -> VerificationReport:
    """|Aut_perm(G)| <= c^d(G) with c = maol_perm(G) unless given."""
    label = group.name or "G"
    with timed(label) as t:
        facts = _facts(group)
        c = facts["maol_perm"] if c is None else c
        holds = facts["aut_perm_order"] <= c ** facts["d"]
    return _check(f"{label}: |Aut_perm| <= maol_perm^d", holds, facts, t.elapsed)


def check_derived_order(group: PermutationGroup) -> VerificationReport:
    """|G'| <= n^(2n^3) for n = |Aut_perm(G)|."""
    label = group.name or "G"
    with timed(label) as t:
        facts = _facts(group)
        bound = frak_f(0, facts["aut_perm_order"])
        holds = bound.certifies(facts["derived_order"])
    return _check(f"{label}: |G'| <= n^(2n^3)", holds, facts, t.elapsed, bound=bound.to_dict())


def check_theorem_bound(group: PermutationGroup) -> VerificationReport:
    """|G| <= frak_f(d, c^d) with c = maol_perm(G)."""
    label = group.name or "G"
    with timed(label) as t:
        facts = _facts(group)
        bound = frak_f(facts["d"], facts["maol_perm"] ** facts["d"])
        holds = bound.certifies(facts["order"])
    return _check(f"{label}: |G| <= f(d, maol_perm^d)", holds, facts, t.elapsed, bound=bound.to_dict())


def frak_f_is_monotone(max_d: int = 3, max_n: int = 16) -> VerificationReport:
    """frak_f(d, n) <= frak_f(d, n + 1) over the sampled range, compared as brackets."""
    bad = []
    for d in range(max_d + 1):
        values = [frak_f(d, n) for n in range(1, max_n + 2)]
        for n, (left, right) in enumerate(zip(values, values[1:]), start=1):
            if left.exact is not None and right.exact is not None:
                ok = left.exact <= right.exact
            else:
                ok = left.upper <= right.lower
            if not ok:
                bad.append([d, n])
    return verdict(f"f(d, n) nondecreasing in n for d <= {max_d}, n <= {max_n}", [], bad,
                   {"pairs": bad} if bad else None)


def bound_checks(group: PermutationGroup) -> list[VerificationReport]:
    """All bound checks on one transitive group."""
    return [
        check_ledneu_permutation(group),
        check_improved_abstract(group.table()),
        check_semiregular_count(group),
        check_derived_order(group),
        check_theorem_bound(group),
    ]


def bound_spot_values() -> list[VerificationReport]:
    """Closed-form values of the three bound functions at small arguments."""
    cases = [
        ("f(1, 1)", frak_f(1, 1).exact, 256),
        ("f(0, 1)", frak_f(0, 1).exact, 1),
        ("f(0, 3)", frak_f(0, 3).exact, 3 ** (2 * 27)),
        ("LN(1)", ledermann_neumann_bound(1).exact, 2),
        ("LN(2)", ledermann_neumann_bound(2).exact, 17),
        ("LN(4)", ledermann_neumann_bound(4).exact, 4**12 + 1),
        ("improved(5, 1)", improved_bound(5, 1).exact, 2),
        ("improved(1, 2)", improved_bound(1, 2).exact, 17),
        ("improved(2, 3)", improved_bound(2, 3).exact, 3**72 + 1),
    ]
    reports = [verdict(name, str(expected), str(computed)) for name, computed, expected in cases]
    reports.append(frak_f_is_monotone())
    return reports


def bounds_corpus(max_degree: int = 6, table1: bool = True, g1: bool = True, **census: Any) -> list[PermutationGroup]:
    """Census groups of degree <= max_degree, the table1 groups and G_1 on 16 points."""
    groups = []
    for d in range(1, max_degree + 1):
        for entry in transitive_groups(d, max_degree=max_degree, **census):
            entry.group.name = entry.group.name or entry.label
            groups.append(entry.group)
    if table1:
        for spec in TABLE1_ROWS:
            group = table1_pair(spec.row).group
            group.name = f"row {spec.row}: {spec.structure}"
            groups.append(group)
    if g1:
        groups.append(gn_permutation_group(gn_group(1)))
    return groups


def verify_bounds_corpus(max_degree: int = 6, table1: bool = True, g1: bool = True, **census: Any) -> list[VerificationReport]:
    """Run bound_checks on every group of the bounds corpus.

    Args:
        max_degree: Largest census degree included.
        table1: Include the eleven table1 pairs.
        g1: Include G_1 in its permutation representation.
        **census: Passed through to transitive_groups (workers, cache_dir).

    Returns:
        The reports of bound_checks, group after group.

    Raises:
        CapExceededError: If max_degree exceeds the census hard limit.
    """
    reports = []
    for group in bounds_corpus(max_degree, table1, g1, **census):
        logger.info(f"bound checks on {group.name or group}")
        reports.extend(bound_checks(group))
    return reports
