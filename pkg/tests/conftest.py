"""Pytest configuration for maolperm tests.

Oracles here use nothing but raw image tuples, so they are independent of
the stabilizer chain, the Cayley tables and the automorphism search.
"""

import itertools

import pytest
from hypothesis import strategies as st

from src.constructors import abelian_regular, alternating_natural, cyclic_regular, dihedral_natural, symmetric_natural
from src.perm import Permutation


def _mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(q[i] for i in p)


def closure_elements(degree: int, generators) -> set[tuple[int, ...]]:
    """Every element of <generators> by breadth-first closure on image tuples."""
    identity = tuple(range(degree))
    gens = [g.images for g in generators]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def closure_order(degree: int, generators) -> int:
    return len(closure_elements(degree, generators))


def brute_automorphism_count(elements: list, multiply) -> int:
    """|Aut(G)| by trying every image tuple for a greedy generating set.

    A candidate is extended along words in the generators and accepted when
    the result is a well-defined bijective homomorphism.
    """
    index = {x: i for i, x in enumerate(elements)}
    identity = next(x for x in elements if all(multiply(x, y) == y for y in elements))
    gens: list = []
    span = {identity}
    for x in elements:
        if x not in span:
            gens.append(x)
            span = _span(span | {x}, gens, multiply)
    count = 0
    for images in itertools.product(elements, repeat=len(gens)):
        phi = {identity: identity}
        frontier = [identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y, img = multiply(x, g), multiply(phi[x], h)
                    if y in phi:
                        if phi[y] != img:
                            ok = False
                            break
                    else:
                        phi[y] = img
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(set(phi.values())) != len(elements):
            continue
        if all(phi[multiply(x, y)] == multiply(phi[x], phi[y]) for x in elements for y in elements):
            count += 1
    del index
    return count


def _span(start: set, gens: list, multiply) -> set:
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def brute_subgroup_classes(n: int) -> int:
    """Number of conjugacy classes of subgroups of Sym(n), n <= 4, via 2-generated closures."""
    degree = n
    elements = list(itertools.permutations(range(degree)))
    subgroups = set()
    for a, b in itertools.combinations_with_replacement(elements, 2):
        subgroups.add(frozenset(closure_elements(degree, [Permutation(a), Permutation(b)])))
    classes = set()
    for sub in subgroups:
        conjugates = []
        for s in elements:
            inv = tuple(sorted(range(degree), key=lambda i: s[i]))
            conjugates.append(frozenset(_mul(_mul(inv, x), s) for x in sub))
        classes.add(min(conjugates, key=lambda c: sorted(c)))
    return len(classes)


@st.composite
def permutations(draw, degree: int | None = None, max_degree: int = 7):
    n = draw(st.integers(1, max_degree)) if degree is None else degree
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def generator_lists(draw, max_degree: int = 7, max_gens: int = 3):
    n = draw(st.integers(1, max_degree))
    k = draw(st.integers(0, max_gens))
    gens = [Permutation(tuple(draw(st.permutations(range(n))))) for _ in range(k)]
    return n, gens


@pytest.fixture
def d8():
    return dihedral_natural(4)


@pytest.fixture
def sym3():
    return symmetric_natural(3)


@pytest.fixture
def alt5():
    return alternating_natural(5)


@pytest.fixture
def z6():
    return cyclic_regular(6)


@pytest.fixture
def klein():
    return abelian_regular([2, 2])
