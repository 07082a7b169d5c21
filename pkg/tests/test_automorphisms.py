"""Tests for automorphism groups, Aut_perm and orbit lengths."""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings

from src.abelian import AbelianGroup
from src.automorphisms import (
    AutSet,
    GroupMap,
    aut_perm,
    aut_perm_via_normaliser,
    automorphism_group,
    automorphisms_fixing,
    central_automorphisms,
    central_homomorphisms,
    centralizing_automorphism_between,
    inner_automorphisms,
    is_standard_tuple,
    maol,
    maol_perm,
    min_generating_tuple,
    orbit_length_multiset,
    pac_equivalent,
    pac_tuple,
    power_map_automorphisms,
    power_map_exponents,
    stabilizer_class,
    stabilizer_mask,
    standard_generating_tuple,
    standard_tuple,
)
from src.constructors import (
    abelian_regular,
    alternating_natural,
    cyclic_regular,
    dicyclic_table,
    dihedral_natural,
    regular_representation,
    sl2_3_table,
    symmetric_natural,
)
from src.errors import CapExceededError, DomainError, NotStandardTupleError, NotTransitiveError
from src.group import PermutationGroup
from src.perm import Permutation

from .conftest import brute_automorphism_count, generator_lists


def _brute(table) -> int:
    return brute_automorphism_count(list(range(table.order)), table.multiply)


class TestGroupMap:
    """Tests for GroupMap bookkeeping."""

    def test_identity_map(self, d8):
        """The identity map should be a verified automorphism."""
        table = d8.table()
        ident = GroupMap.from_images(table, np.arange(8))
        assert ident.is_automorphism()
        assert ident.is_identity()
        assert ident.verify(full=True)

    def test_constant_map_is_not_injective(self, d8):
        """A constant map to the identity should be a homomorphism but not bijective."""
        table = d8.table()
        trivial = GroupMap.from_images(table, np.zeros(8, dtype=int))
        assert trivial.homomorphism
        assert not trivial.bijective
        with pytest.raises(DomainError):
            trivial.inverse()

    def test_rejects_wrong_shape(self, d8):
        """from_images should reject an image array of the wrong length."""
        with pytest.raises(DomainError):
            GroupMap.from_images(d8.table(), [0, 1])

    def test_then_and_inverse(self, sym3):
        """Composing an automorphism with its inverse should give the identity."""
        table = sym3.table()
        for phi in automorphism_group(table):
            assert phi.then(phi.inverse()).is_identity()


class TestAutomorphismGroup:
    """Tests for the backtracking automorphism search."""

    @pytest.mark.parametrize("build, expected", [
        (lambda: cyclic_regular(1).table(), 1),
        (lambda: cyclic_regular(6).table(), 2),
        (lambda: cyclic_regular(8).table(), 4),
        (lambda: abelian_regular([2, 2]).table(), 6),
        (lambda: symmetric_natural(3).table(), 6),
        (lambda: dihedral_natural(4).table(), 8),
        (lambda: dicyclic_table(2), 24),
        (lambda: symmetric_natural(4).table(), 24),
        (lambda: sl2_3_table(), 24),
        (lambda: alternating_natural(5).table(), 120),
    ])
    def test_known_orders(self, build, expected):
        """|Aut(G)| should match the known value."""
        auts = automorphism_group(build())
        assert len(auts) == expected
        assert auts.is_closed()

    @pytest.mark.parametrize("build", [
        lambda: dihedral_natural(4).table(),
        lambda: dicyclic_table(2),
        lambda: abelian_regular([4, 2]).table(),
        lambda: dihedral_natural(6).table(),
    ])
    def test_matches_brute_force(self, build):
        """The backtracking search should count the same maps as exhaustive search."""
        table = build()
        assert len(automorphism_group(table)) == _brute(table)

    @given(generator_lists(max_degree=5, max_gens=2))
    @settings(max_examples=15, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
    def test_random_groups_match_brute_force(self, data):
        """Random small groups should agree with exhaustive search."""
        degree, gens = data
        group = PermutationGroup(degree, gens)
        assume(group.order() <= 12)
        table = group.table()
        assert len(automorphism_group(table)) == _brute(table)

    def test_every_map_is_verified(self, d8):
        """Each returned map should pass the full |G|^2 check."""
        for phi in automorphism_group(d8.table()):
            assert phi.verify(full=True)

    def test_cap(self):
        """automorphism_group should refuse groups above the cap."""
        with pytest.raises(CapExceededError):
            automorphism_group(symmetric_natural(4).table(), cap=10)

    @pytest.mark.parametrize("build, d", [
        (lambda: cyclic_regular(1).table(), 0),
        (lambda: cyclic_regular(6).table(), 1),
        (lambda: dihedral_natural(4).table(), 2),
        (lambda: abelian_regular([2, 2, 2]).table(), 3),
        (lambda: alternating_natural(5).table(), 2),
    ])
    def test_min_generating_tuple(self, build, d):
        """min_generating_tuple should find d(G) and a tuple that generates."""
        table = build()
        k, tup = min_generating_tuple(table)
        assert k == d
        assert len(tup) == d
        assert table.generates(tup)


class TestSpecialSubgroups:
    """Tests for inner, central, power and fixing automorphisms."""

    def test_inner_automorphisms_of_d8(self, d8):
        """Inn(D8) should have order 4."""
        assert len(inner_automorphisms(d8.table())) == 4

    def test_central_automorphisms_of_d8(self, d8):
        """Aut_cent(D8) should have order 4 and lie in Aut(D8)."""
        table = d8.table()
        cent = central_automorphisms(table)
        assert len(cent) == 4
        assert cent.issubset(automorphism_group(table))
        assert len(central_homomorphisms(table)) == 4

    def test_power_map_exponents(self, z6, d8):
        """Power maps should be automorphisms for units of an abelian group only."""
        assert power_map_exponents(z6.table()) == [1, 5]
        assert power_map_exponents(d8.table()) == [1]

    def test_power_map_automorphisms(self, z6):
        """The power maps of Z/6 should be the two automorphisms x -> x and x -> x^5."""
        table = z6.table()
        powers = power_map_automorphisms(table)
        assert len(powers) == 2
        assert powers.same_maps(automorphism_group(table))

    def test_stabilizer_class_of_d8(self, d8):
        """The point stabilizers of D8 should form one class of two subgroups."""
        assert len(stabilizer_class(d8, stabilizer_mask(d8, 0))) == 2

    def test_automorphisms_fixing_generators(self, d8):
        """Only the identity should fix a generating set."""
        table = d8.table()
        assert len(automorphisms_fixing(table, table.generators)) == 1

    def test_first_nontrivial(self, klein):
        """first_nontrivial should stop at one non-identity map."""
        table = klein.table()
        found = automorphisms_fixing(table, [table.generators[0]], first_nontrivial=True)
        assert len(found) == 1
        assert not found.contains_identity()


class TestAutPerm:
    """Tests for normaliser-induced automorphisms and maol_perm."""

    @pytest.mark.parametrize("build, expected", [
        (lambda: cyclic_regular(1), 1),
        (lambda: cyclic_regular(2), 1),
        (lambda: cyclic_regular(3), 2),
        (lambda: cyclic_regular(4), 2),
        (lambda: cyclic_regular(6), 2),
        (lambda: abelian_regular([2, 2]), 3),
        (lambda: regular_representation(symmetric_natural(3).table()), 3),
        (lambda: dihedral_natural(4), 2),
        (lambda: dihedral_natural(3), 3),
        (lambda: dihedral_natural(6), 3),
        (lambda: alternating_natural(5), 24),
    ])
    def test_named_values(self, build, expected):
        """maol_perm should match the known value."""
        assert maol_perm(build()) == expected

    def test_regular_group_has_full_aut_perm(self):
        """For a regular group, Aut_perm should be all of Aut."""
        group = cyclic_regular(5)
        assert aut_perm(group).same_maps(automorphism_group(group.table()))

    @pytest.mark.parametrize("build", [
        lambda: dihedral_natural(4),
        lambda: dihedral_natural(5),
        lambda: symmetric_natural(4),
        lambda: alternating_natural(4),
        lambda: abelian_regular([2, 2]),
        lambda: PermutationGroup(6, [Permutation.parse("(1,2,3)(4,5,6)", 6), Permutation.parse("(1,4)(2,5)(3,6)", 6)]),
    ])
    def test_stabilizer_route_matches_normaliser(self, build):
        """Aut_perm from stabilizer conjugates should equal the normaliser-induced maps."""
        group = build()
        assert aut_perm(group).same_maps(aut_perm_via_normaliser(group))

    def test_d8_orbit_multiset(self, d8):
        """Aut_perm(D8) orbits should be the conjugacy classes."""
        counts = orbit_length_multiset(aut_perm(d8), d8)
        assert counts == Counter({1: 2, 2: 3})

    def test_intransitive_rejected(self):
        """aut_perm should raise NotTransitiveError for an intransitive group."""
        group = PermutationGroup(3, [Permutation.parse("(1,2)", 3)])
        with pytest.raises(NotTransitiveError):
            maol_perm(group)

    def test_maol_of_abstract_groups(self, sym3):
        """maol should use all of Aut."""
        assert maol(cyclic_regular(4).table()) == 2
        assert maol(abelian_regular([2, 2]).table()) == 3
        assert maol(sym3.table()) == 3

    def test_semiregular_on_generating_tuple(self, klein):
        """Aut should act semiregularly on a generating tuple."""
        table = klein.table()
        _, tup = min_generating_tuple(table)
        assert automorphism_group(table).acts_semiregularly_on(tup)


class TestStandardTuples:
    """Tests for standard tuples and their power-automorphism-commutator data."""

    def test_standard_generating_tuple_of_abelian(self):
        """Z/6 x Z/2 should have a standard generating tuple of length 2."""
        table = AbelianGroup.from_invariants([6, 2]).to_table()
        tup = standard_generating_tuple(table)
        assert len(tup) == 2
        assert table.generates(tup)

    def test_standard_generating_tuple_needs_abelian(self, d8):
        """standard_generating_tuple should reject a non-abelian group."""
        with pytest.raises(DomainError):
            standard_generating_tuple(d8.table())

    def test_standard_tuple_in_d8(self, d8):
        """A standard tuple of D8 should lift a basis of D8/D8' and generate D8."""
        table = d8.table()
        tup = standard_tuple(table)
        assert len(tup) == 2
        assert is_standard_tuple(table, tup)
        assert table.generates(tup)

    def test_pac_tuple(self, d8):
        """pac_tuple should be defined for a standard tuple and equivalent to itself."""
        table = d8.table()
        tup = standard_tuple(table)
        pac = pac_tuple(table, tup)
        assert len(pac.powers) == 2
        assert len(pac.commutators) == 1
        assert pac_equivalent(table, tup, tup)
        assert centralizing_automorphism_between(table, tup, tup) is not None

    @pytest.mark.parametrize("make", [lambda: dihedral_natural(4).table(), lambda: dicyclic_table(2)], ids=["D8", "Q8"])
    def test_pac_classes_are_centralizing_orbits(self, make):
        """Standard tuples should be pac-equivalent exactly when a G'-centralizing automorphism maps one to the other."""
        table = make()
        tuples = [t for t in itertools.product(range(table.order), repeat=2) if is_standard_tuple(table, t)]
        classes: dict = {}
        for t in tuples:
            classes.setdefault(pac_tuple(table, t), []).append(t)
        assert len(tuples) == 24
        derived = np.flatnonzero(table.derived_mask)
        for members in classes.values():
            for first, second in itertools.permutations(members, 2):
                alpha = centralizing_automorphism_between(table, first, second)
                assert alpha is not None, (first, second)
                assert list(alpha.images[list(first)]) == list(second)
                assert list(alpha.images[derived]) == list(derived)
        representatives = [members[0] for members in classes.values()]
        for first, second in itertools.permutations(representatives, 2):
            assert centralizing_automorphism_between(table, first, second) is None

    def test_pac_tuple_rejects_non_standard(self, d8):
        """pac_tuple should raise NotStandardTupleError for the identity tuple."""
        with pytest.raises(NotStandardTupleError):
            pac_tuple(d8.table(), [0, 0])

    def test_autset_orbits_cover_group(self, d8):
        """AutSet orbits should partition the elements."""
        auts = AutSet(d8.table(), [np.arange(8)])
        assert sum(len(o) for o in auts.orbits()) == 8
        assert auts.max_orbit_length() == 1
