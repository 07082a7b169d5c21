"""Tests for the transitive group census and the classification verifiers."""

from __future__ import annotations

import inspect
import json
import logging
from unittest.mock import patch

import pytest

from src.automorphisms import aut_perm, automorphism_group
from src.bounds import frak_f, verify_bounds_corpus
from src.census import (
    CENSUS_ALGORITHM_VERSION,
    CensusEntry,
    all_subgroups_up_to_conjugacy,
    classify,
    named_transitive_groups,
    permutation_isomorphic,
    regular_corpus,
    table1_facts,
    transitive_groups,
    verify_adapted_basis_lemma,
    verify_centralizer_lemma,
    verify_maol_bounds,
    verify_normaliser_lemma,
    verify_regular_lemmas,
    verify_table1,
    verify_table1_row,
    verify_theorem_1_1_part1,
    verify_theorem_1_1_part4,
)
from src.constructors import abelian_regular, cyclic_regular, dihedral_natural
from src.errors import CapExceededError
from src.gn import verify_gn
from src.group import PermutationGroup
from src.perm import Permutation, conjugate

from .conftest import brute_subgroup_classes


def _all_pass(reports) -> bool:
    return all(r.status != "fail" for r in reports)


class TestSubgroupLattice:
    """Tests for subgroups of Sym(n) up to conjugacy."""

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 19)])
    def test_class_counts(self, n, count):
        """Sym(n) should have the known number of subgroup classes."""
        assert len(all_subgroups_up_to_conjugacy(n)) == count

    @pytest.mark.parametrize("n", [3, 4])
    def test_matches_brute_force(self, n):
        """Class counts should match closure of all pairs plus conjugation."""
        assert len(all_subgroups_up_to_conjugacy(n)) == brute_subgroup_classes(n)

    def test_sorted_by_order(self):
        """Representatives should come ordered by subgroup order."""
        orders = [h.order() for h in all_subgroups_up_to_conjugacy(4)]
        assert orders == sorted(orders)
        assert orders[0] == 1
        assert orders[-1] == 24

    def test_degree_above_limit(self):
        """A degree above the census limit should raise CapExceededError."""
        with pytest.raises(CapExceededError):
            all_subgroups_up_to_conjugacy(8)

    @pytest.mark.slow
    @pytest.mark.parametrize("n, count", [(6, 56), (7, 96)])
    def test_class_counts_large(self, n, count):
        """Sym(6) and Sym(7) should have 56 and 96 subgroup classes."""
        assert len(all_subgroups_up_to_conjugacy(n, max_degree=7)) == count


class TestTransitiveGroups:
    """Tests for the transitive census."""

    @pytest.mark.parametrize("degree, count", [(1, 1), (2, 1), (3, 2), (4, 5), (5, 5)])
    def test_counts(self, degree, count):
        """The census should have the known number of transitive groups per degree."""
        entries = transitive_groups(degree)
        assert len(entries) == count
        assert all(e.group.is_transitive() for e in entries)

    @pytest.mark.slow
    @pytest.mark.parametrize("degree, count", [(6, 16), (7, 7)])
    def test_counts_large(self, degree, count):
        """Degrees 6 and 7 should have 16 and 7 transitive groups."""
        assert len(transitive_groups(degree, max_degree=7)) == count

    def test_named_entries(self):
        """The degree-4 groups with maol_perm <= 3 should carry their names."""
        names = {e.name for e in transitive_groups(4) if e.name}
        assert names == {"Z/4 reg", "(Z/2)^2 reg", "D8"}

    def test_degree_5_stats(self):
        """Alt(5) and Sym(5) should be the insoluble degree-5 groups."""
        entries = transitive_groups(5)
        insoluble = sorted(e.order for e in entries if not e.soluble)
        assert insoluble == [60, 120]
        assert max(e.maol_perm for e in entries if e.order == 60) == 24

    @pytest.mark.parametrize("degree", [4, 5])
    def test_maol_perm_matches_stabilizer_route(self, degree):
        """The census maol_perm, read off the normaliser, should match aut_perm via the stabilizer class."""
        for e in transitive_groups(degree):
            assert e.maol_perm == aut_perm(e.group, cap=max(2000, e.order)).max_orbit_length(), e.label

    def test_workers_agree(self):
        """A worker pool should give the same statistics as a serial run."""
        serial = [(e.order, e.maol_perm, e.soluble) for e in transitive_groups(4, workers=1)]
        pooled = [(e.order, e.maol_perm, e.soluble) for e in transitive_groups(4, workers=2)]
        assert serial == pooled

    def test_entry_round_trip(self):
        """CensusEntry.from_dict should rebuild the group from to_dict."""
        entry = transitive_groups(4)[-1]
        rebuilt = CensusEntry.from_dict(entry.to_dict())
        assert rebuilt.group.same_group(entry.group)
        assert rebuilt.maol_perm == entry.maol_perm

    def test_label_without_name(self):
        """An unnamed entry should be labelled by degree, order and generators."""
        group = PermutationGroup(3, [Permutation.parse("(1,2,3)", 3)])
        entry = CensusEntry(3, group, 3, 2, True)
        assert entry.label == "T3[order 3]<(1,2,3)>"


class TestCensusCache:
    """Tests for the on-disk census cache."""

    def test_cache_written_and_reused(self, tmp_path):
        """A second run should load the cache without recomputing the lattice."""
        first = transitive_groups(3, cache_dir=tmp_path)
        assert (tmp_path / "transitive-3.json").exists()
        with patch("src.census._subgroup_classes", side_effect=AssertionError("recomputed")):
            second = transitive_groups(3, cache_dir=tmp_path)
        assert [e.to_dict() for e in first] == [e.to_dict() for e in second]

    def test_stale_version_ignored(self, tmp_path, caplog):
        """A cache file with another version should be ignored with a warning."""
        path = tmp_path / "transitive-2.json"
        path.write_text(json.dumps({"version": "0", "degree": 2, "entries": []}))
        with caplog.at_level(logging.WARNING, logger="src.census"):
            entries = transitive_groups(2, cache_dir=tmp_path)
        assert len(entries) == 1
        assert "version" in caplog.text
        assert json.loads(path.read_text())["version"] == CENSUS_ALGORITHM_VERSION

    def test_unreadable_cache_ignored(self, tmp_path):
        """A corrupt cache file should be recomputed."""
        (tmp_path / "transitive-2.json").write_text("{not json")
        assert len(transitive_groups(2, cache_dir=tmp_path)) == 1


class TestPermutationIsomorphism:
    """Tests for conjugacy in Sym(n)."""

    def test_conjugate_copy(self, d8):
        """A conjugate of D8 should be permutation isomorphic to D8."""
        s = Permutation.parse("(2,3)", 4)
        copy = PermutationGroup(4, [conjugate(g, s) for g in d8.generators])
        assert permutation_isomorphic(d8, copy)

    def test_different_groups(self):
        """Z/4 and (Z/2)^2 regular should not be permutation isomorphic."""
        assert not permutation_isomorphic(cyclic_regular(4), abelian_regular([2, 2]))

    def test_named_groups(self):
        """named_transitive_groups should respect max_degree."""
        names = [g.name for g in named_transitive_groups(4)]
        assert "D12" not in names
        assert "D8" in names
        assert dihedral_natural(4).same_group(next(g.group for g in named_transitive_groups(4) if g.name == "D8"))


class TestClassification:
    """Tests for classify and the classification verifiers."""

    def test_classify_up_to_degree_5(self):
        """classify should return the listed groups of degree <= 5."""
        names = sorted(e.label for e in classify(5, 3))
        assert names == sorted(["Z/1 reg", "Z/2 reg", "Z/3 reg", "D6", "Z/4 reg", "(Z/2)^2 reg", "D8"])

    def test_part1_up_to_degree_5(self):
        """verify_theorem_1_1_part1 should pass for degree <= 5."""
        reports = verify_theorem_1_1_part1(5, 3)
        assert len(reports) == 5
        assert all(r.status == "pass" for r in reports)

    def test_part1_above_threshold_skipped(self):
        """Thresholds above 3 should be reported as skipped."""
        reports = verify_theorem_1_1_part1(3, 5)
        assert all(r.status == "skipped" for r in reports)

    def test_part4_up_to_degree_5(self):
        """verify_theorem_1_1_part4 should pass, including Alt(5) at 24."""
        reports = verify_theorem_1_1_part4(5)
        assert _all_pass(reports)
        alt5 = next(r for r in reports if r.check.startswith("Alt(5)"))
        assert alt5.computed == {"maol_perm": 24, "soluble": False}

    @pytest.mark.slow
    def test_part1_and_part4_degree_6(self):
        """Both verifiers should pass up to degree 6."""
        assert _all_pass(verify_theorem_1_1_part1(6, 3))
        assert _all_pass(verify_theorem_1_1_part4(6))


class TestTable1Verification:
    """Tests for the table1 verifier."""

    def test_row_facts(self):
        """Row 7 should be a core-free pair in a direct product with a nontrivial P."""
        facts = table1_facts(7)
        assert facts["core_free"]
        assert facts["direct_product"]
        assert facts["derived_order"] == 60
        assert facts["p_order"] == 2
        assert facts["p_centralizer_trivial"]

    @pytest.mark.parametrize("row", [7, 10])
    def test_row_passes(self, row):
        """verify_table1_row should pass with maol_perm 24."""
        report = verify_table1_row(row)
        assert report.status == "pass", report.witness
        assert report.computed == 24
        assert report.check == f"row {row}"

    @pytest.mark.slow
    def test_all_rows(self):
        """Every row should reproduce its maol_perm."""
        reports = verify_table1()
        assert [r.computed for r in reports] == [48, 48, 40, 40, 80, 80, 24, 24, 24, 24, 72]
        assert all(r.status == "pass" for r in reports)


class TestLemmaSuites:
    """Tests for the property suites."""

    def test_regular_corpus(self):
        """The corpus of order <= 8 should contain D8 and Q8."""
        labels = [label for label, _ in regular_corpus(8)]
        assert "D8" in labels
        assert "Q8" in labels
        assert all(table.order <= 8 for _, table in regular_corpus(8))

    def test_regular_lemmas(self):
        """Aut_perm = Aut for regular groups of order <= 8."""
        assert _all_pass(verify_regular_lemmas(max_order=8, max_degree=4))

    def test_normaliser_lemma(self):
        """Both Aut_perm routes should agree up to degree 4."""
        assert _all_pass(verify_normaliser_lemma(max_degree=4))

    def test_maol_bounds(self):
        """Class length <= maol_perm <= maol up to degree 4."""
        assert _all_pass(verify_maol_bounds(max_degree=4))

    @pytest.mark.slow
    def test_maol_bounds_degree_6(self):
        """Class length <= maol_perm <= maol should hold on all 16 groups of degree 6."""
        reports = verify_maol_bounds(max_degree=6)
        assert _all_pass(reports)
        assert reports[-1].details["groups"] == 16

    def test_centralizer_lemma(self):
        """The centraliser criterion should hold for abelian groups of order <= 16."""
        reports = verify_centralizer_lemma(max_order=16)
        assert reports
        assert all(r.status == "pass" for r in reports)

    def test_adapted_basis_lemma(self):
        """Adapted bases should exist for abelian 2-groups of order <= 32."""
        reports = verify_adapted_basis_lemma(max_order=32, primes=(2,))
        assert _all_pass(reports)
        assert sum(r.check.endswith("<p a_1 + a_2>") for r in reports) == 2


class TestPublicDocstrings:
    """Tests for the documented public API."""

    @pytest.mark.parametrize("func", [
        automorphism_group,
        aut_perm,
        transitive_groups,
        frak_f,
        verify_gn,
        verify_bounds_corpus,
        verify_theorem_1_1_part1,
        verify_theorem_1_1_part4,
        verify_table1_row,
        verify_table1,
        verify_regular_lemmas,
        verify_normaliser_lemma,
        verify_maol_bounds,
        verify_centralizer_lemma,
        verify_adapted_basis_lemma,
    ], ids=lambda f: f.__name__)
    def test_documents_args_and_returns(self, func):
        """Public entry points should document their arguments and return value."""
        doc = inspect.getdoc(func)
        assert "Args:" in doc
        assert "Returns:" in doc
