"""Tests for the 2-groups G_n."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.automorphisms import automorphism_group, maol_perm
from src.errors import CapExceededError, DegreeMismatchError, InvalidParameterError
from src.gn import (
    GnElement,
    gn_alpha_moves_stabilizer,
    gn_alpha_n,
    gn_central_automorphisms,
    gn_central_stabilizer_class,
    gn_centre,
    gn_derived,
    gn_expected_stabilizer_class,
    gn_explicit_orbit_lengths,
    gn_group,
    gn_maol_perm,
    gn_orbit_lengths,
    gn_permutation_group,
    gn_stabilizer_class,
    gn_table,
    gn_word,
    verify_gn,
)


@st.composite
def gn_triples(draw):
    """n in {2, 3} and three random elements of G_n."""
    n = draw(st.sampled_from([2, 3]))
    element = st.builds(GnElement, st.just(n), st.integers(0, 2 ** (2**n + 1) - 1), st.integers(0, 1), st.integers(0, 1))
    return n, draw(element), draw(element), draw(element)


@pytest.fixture
def g1():
    return gn_group(1)


class TestGnArithmetic:
    """Tests for the normal-form multiplication of G_n."""

    def test_rejects_unsupported_n(self):
        """gn_group should reject n outside 1..3."""
        with pytest.raises(InvalidParameterError):
            gn_group(0)
        with pytest.raises(InvalidParameterError):
            gn_group(4)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_order(self, n):
        """|G_n| should be 2^(2^n + 3)."""
        group = gn_group(n)
        assert group.order == 2 ** (2**n + 3)
        assert group.table.order == group.order

    def test_defining_relations(self, g1):
        """The generators of G_1 should satisfy the defining relations."""
        x1, x2, x3 = g1.x(1), g1.x(2), g1.x(3)
        e = g1.identity()
        assert g1.multiply(x1, x1) == g1.b
        assert g1.multiply(x3, x3) == g1.b
        assert g1.multiply(x2, x2) == e
        assert g1.commutator(x1, x2) == g1.a
        assert g1.commutator(x2, x3) == g1.b
        assert g1.commutator(x1, x3) == e
        assert g1.multiply(g1.a, g1.a) == e

    def test_g1_associative_on_all_triples(self, g1):
        """Multiplication in G_1 should be associative on all 32^3 triples."""
        elements = list(g1.elements())
        assert len(elements) == 32
        products = {(u, v): g1.multiply(u, v) for u in elements for v in elements}
        for u in elements:
            for v in elements:
                uv = products[u, v]
                for w in elements:
                    assert products[uv, w] == products[u, products[v, w]]

    def test_g1_inverses_exist(self, g1):
        """Every element of G_1 should have exactly one two-sided inverse."""
        elements = list(g1.elements())
        for u in elements:
            inverses = [v for v in elements if g1.multiply(u, v) == g1.identity()]
            assert len(inverses) == 1
            assert g1.multiply(inverses[0], u) == g1.identity()

    @given(gn_triples())
    @settings(max_examples=2000, deadline=None)
    def test_associative_on_random_triples(self, triple):
        """Multiplication in G_2 and G_3 should be associative with two-sided inverses."""
        n, u, v, w = triple
        group = gn_group(n)
        assert group.multiply(group.multiply(u, v), w) == group.multiply(u, group.multiply(v, w))
        assert group.multiply(u, group.inverse(u)) == group.identity()
        assert group.multiply(group.inverse(u), u) == group.identity()

    def test_inverse(self, g1):
        """inverse should give the identity on both sides."""
        for u in g1.elements():
            assert g1.multiply(u, g1.inverse(u)) == g1.identity()
            assert g1.multiply(g1.inverse(u), u) == g1.identity()

    def test_mixing_groups(self, g1):
        """Multiplying elements of different G_n should raise DegreeMismatchError."""
        with pytest.raises(DegreeMismatchError):
            g1.multiply(g1.x(1), gn_group(2).x(1))

    def test_word(self):
        """gn_word should print the normal form."""
        assert gn_word(GnElement(1, 0b101, 1, 0)) == "x1*x3*a"
        assert gn_word(GnElement(1, 0)) == "1"


class TestGnStructure:
    """Tests for centre, derived subgroup, stabilizer class and alpha_n."""

    @pytest.mark.parametrize("n", [1, 2])
    def test_centre_and_derived(self, n):
        """Centre and derived subgroup should both be {1, a, b, ab}."""
        group = gn_group(n)
        expected = {group.central_element(k) for k in range(4)}
        assert gn_centre(group) == expected
        assert gn_derived(group) == expected

    @pytest.mark.parametrize("n", [1, 2])
    def test_stabilizer_class(self, n):
        """The conjugates of H_n should be <h>, <ha>, <hb>, <hab>."""
        group = gn_group(n)
        assert gn_stabilizer_class(group) == gn_expected_stabilizer_class(group)
        assert len(gn_stabilizer_class(group)) == 4

    @pytest.mark.parametrize("n", [1, 2])
    def test_central_stabilizer_class(self, n):
        """Aut_cent(G_n) should move H_n exactly through its conjugacy class."""
        group = gn_group(n)
        assert gn_central_stabilizer_class(group) == gn_stabilizer_class(group)

    def test_table(self, g1):
        """gn_table should enumerate all 32 elements of G_1 and respect the cap."""
        assert gn_table(g1).order == 32
        with pytest.raises(CapExceededError):
            gn_table(gn_group(2), cap=100)

    def test_alpha_is_automorphism_outside_aut_perm(self, g1):
        """alpha_1 should be an automorphism that moves H_1 off its class."""
        alpha = gn_alpha_n(g1)
        assert alpha.is_automorphism()
        assert alpha.verify(full=True)
        assert gn_alpha_moves_stabilizer(g1)

    def test_central_automorphisms_of_g1(self, g1):
        """Aut_cent(G_1) should have 64 members, half of Aut(G_1)."""
        cent = gn_central_automorphisms(g1)
        full = automorphism_group(g1.table)
        assert len(cent) == 64
        assert len(full) == 128
        assert cent.issubset(full)

    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("filtered", [False, True])
    def test_orbit_formula_matches_explicit_maps(self, n, filtered):
        """Orbit lengths from column sumsets should match orbits of the explicit maps."""
        group = gn_group(n)
        assert gn_explicit_orbit_lengths(group, filtered) == gn_orbit_lengths(group, filtered)

    def test_explicit_orbits_of_g1(self, g1):
        """Aut_cent(G_1) should fix the centre and move every other element through 4 points."""
        assert gn_explicit_orbit_lengths(g1) == {1: 4, 4: 28}

    def test_orbit_lengths_unfiltered(self, g1):
        """Aut_cent orbits should be the centre as fixed points and cosets uZ of length 4."""
        lengths = gn_orbit_lengths(g1, filtered=False)
        assert lengths == {1: 4, 4: g1.order - 4}

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_maol_perm_is_four(self, n):
        """maol_perm(G_n) should be 4."""
        assert gn_maol_perm(n) == 4


class TestGnPermutationGroup:
    """Tests for G_1 on the cosets of H_1."""

    def test_coset_action(self, g1):
        """G_1 on H_1 should be transitive of degree 16 and order 32."""
        group = gn_permutation_group(g1)
        assert group.degree == 16
        assert group.order() == 32
        assert group.is_transitive()

    def test_generic_pipeline_agrees(self, g1):
        """The generic maol_perm should give 4 on the coset action."""
        assert maol_perm(gn_permutation_group(g1)) == 4

    def test_verify_g1(self):
        """verify_gn(1) should pass every check."""
        reports = verify_gn(1)
        assert all(r.status == "pass" for r in reports), [r.check for r in reports if not r.passed]
        assert any(r.check == "maol_perm(G_1) = 4" for r in reports)

    def test_verify_g2_skips_pipeline(self):
        """verify_gn(2) should pass and skip the coset-action pipeline."""
        reports = verify_gn(2)
        assert [r.status for r in reports].count("skipped") == 1
        assert all(r.status != "fail" for r in reports)
