"""Tests for verification reports and the report schema."""

from __future__ import annotations

import json

import jsonschema
import numpy as np
import pytest

from src.bounds import bound_spot_values
from src.census import verify_table1_row
from src.commands.table1 import TABLE1_COLUMNS
from src.errors import MaolpermError
from src.gn import verify_gn
from src.report import (
    ReportBundle,
    VerificationReport,
    aligned_table,
    jsonable,
    skipped,
    timed,
    validate_payload,
    verdict,
)


class TestVerdict:
    """Tests for building single reports."""

    def test_pass(self):
        """verdict should pass when expected equals computed."""
        report = verdict("x", 4, 4)
        assert report.passed
        assert report.witness == {}

    def test_fail_carries_witness(self):
        """verdict should fail with both values as the default witness."""
        report = verdict("x", 4, 5)
        assert report.status == "fail"
        assert report.witness == {"expected": 4, "computed": 5}

    def test_fail_without_witness_rejected(self):
        """A failed report with an empty witness should not be constructible."""
        with pytest.raises(MaolpermError):
            VerificationReport("x", "fail", 1, 2)

    def test_unknown_status_rejected(self):
        """VerificationReport should reject statuses outside pass/fail/skipped."""
        with pytest.raises(MaolpermError):
            VerificationReport("x", "maybe")

    def test_lines(self):
        """line should render pass, fail and skipped reports."""
        assert verdict("a", 1, 1).line() == "[PASS   ] a: expected 1, computed 1"
        assert verdict("b", 1, 2).line() == "[FAIL   ] b: expected 1, computed 2"
        assert skipped("c", "too big").line() == "[SKIPPED] c: too big"
        assert VerificationReport("d", "pass", None, 7).line() == "[PASS   ] d: 7"

    def test_timed(self):
        """timed should record a non-negative elapsed time."""
        with timed("block") as t:
            sum(range(1000))
        assert t.elapsed >= 0


class TestReportBundle:
    """Tests for bundles and their JSON rendering."""

    def test_counts_and_success(self):
        """success should be false as soon as one report fails."""
        bundle = ReportBundle("demo", [verdict("a", 1, 1), skipped("b", "n/a")])
        assert bundle.success
        bundle.add(verdict("c", 1, 2))
        assert not bundle.success
        assert bundle.counts == {"pass": 1, "fail": 1, "skipped": 1}

    def test_json_validates_and_round_trips(self):
        """to_json should produce a schema-valid payload that from_dict reads back."""
        bundle = ReportBundle("demo", [verdict("a", [1, 2], [1, 2], wall_time=0.5, degree=4)])
        payload = json.loads(bundle.to_json())
        assert payload["success"] is True
        assert payload["reports"][0]["details"] == {"degree": 4}
        again = ReportBundle.from_dict(payload)
        assert again.reports == bundle.reports

    def test_schema_rejects_fail_without_witness(self):
        """The schema should reject a failed report with an empty witness."""
        payload = ReportBundle("demo", [verdict("a", 1, 1)]).to_dict()
        payload["reports"][0]["status"] = "fail"
        with pytest.raises(jsonschema.ValidationError):
            validate_payload(payload)

    def test_text_summary(self):
        """to_text should end with the summary line."""
        bundle = ReportBundle("demo", [verdict("a", 1, 1)])
        assert bundle.to_text().splitlines()[-1] == "demo: 1 passed, 0 failed, 0 skipped"
        assert ReportBundle("empty").to_text() == "empty: no checks run"

    def test_text_carries_witness_and_details(self):
        """to_text should print the witness and details of every report."""
        bundle = ReportBundle("demo", [verdict("a", 1, 2, degree=4), skipped("b", "too big")])
        lines = bundle.to_text().splitlines()
        assert lines[0] == "[FAIL   ] a: expected 1, computed 2"
        facts = json.loads(lines[1])
        assert facts["witness"] == {"expected": 1, "computed": 2}
        assert facts["details"] == {"degree": 4}
        assert lines[2] == "[SKIPPED] b: too big"
        assert "details" not in json.loads(lines[3])

    def test_aligned_table(self):
        """aligned_table should pad every column to its widest cell."""
        reports = [verdict("row 1", 2, 2, degree=4), verdict("row 22", 10, 10, degree=12)]
        lines = aligned_table(reports, (("row", "check"), ("deg", "degree"), ("value", "computed"))).splitlines()
        assert lines[0] == "row     deg  value"
        assert lines[1] == "------  ---  -----"
        assert lines[2] == "row 1   4    2"
        assert lines[3] == "row 22  12   10"


class TestJsonable:
    """Tests for normalising report values to JSON data."""

    def test_int_keys_and_tuples(self):
        """jsonable should turn dict keys into strings and tuples into lists."""
        assert jsonable({1: (4, 5), 4: 28}) == {"1": [4, 5], "4": 28}

    def test_sets_are_sorted(self):
        """jsonable should render equal sets as equal sorted lists."""
        assert jsonable(frozenset({3, 1, 2})) == [1, 2, 3]

    def test_numpy_scalars(self):
        """jsonable should unwrap numpy scalars and arrays."""
        assert jsonable(np.int64(7)) == 7
        assert type(jsonable(np.int64(7))) is int
        assert jsonable(np.arange(3)) == [0, 1, 2]

    def test_report_stores_normalised_values(self):
        """A report built from int-keyed counts should equal its JSON reading."""
        report = verdict("x", {1: 4, 4: 28}, {1: 4, 4: 28})
        assert report.expected == {"1": 4, "4": 28}
        assert VerificationReport.from_dict(json.loads(json.dumps(report.to_dict()))) == report


class TestRealOutputRoundTrip:
    """Tests that command output survives JSON unchanged."""

    @staticmethod
    def round_trip(bundle: ReportBundle) -> ReportBundle:
        return ReportBundle.from_dict(json.loads(bundle.to_json()))

    def test_gn(self):
        """The G_1 reports should read back equal from their JSON."""
        bundle = ReportBundle("gn", verify_gn(1))
        assert self.round_trip(bundle).reports == bundle.reports

    def test_table1_row(self):
        """A table1 row report should read back equal from its JSON."""
        bundle = ReportBundle("table1", [verify_table1_row(7)], columns=TABLE1_COLUMNS)
        assert self.round_trip(bundle).reports == bundle.reports

    def test_bound_spot_values(self):
        """The bound spot values should read back equal from their JSON."""
        bundle = ReportBundle("bounds", bound_spot_values())
        assert self.round_trip(bundle).reports == bundle.reports

    def test_table1_text_has_column_table(self):
        """A table1 bundle should open its text with the aligned column header."""
        bundle = ReportBundle("table1", [verify_table1_row(7)], columns=TABLE1_COLUMNS)
        header = bundle.to_text().splitlines()[0]
        for title in ("row", "|G|", "|Aut_perm|", "maol_perm", "status"):
            assert title in header
