"""Verification reports and their JSON / text renderings."""

from __future__ import annotations

import json
import logging
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from functools import cache
from importlib import resources
from typing import Any, Iterator

import jsonschema
import numpy as np

from .errors import MaolpermError

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1.0"
STATUSES = ("pass", "fail", "skipped")


def jsonable(value: Any) -> Any:
    """value as plain JSON data: string keys, lists for tuples and sets, builtin scalars.

    Sets come out sorted so equal sets give equal lists. Anything else is
    rendered with str().
    """
    if isinstance(value, np.generic):
        value = value.item()
    if value is None or isinstance(value, (bool, str, float)):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((jsonable(v) for v in value), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    return str(value)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check.

    Values are stored as JSON data, so to_dict() and from_dict() round-trip
    exactly.
    """

    check: str
    status: str
    expected: Any = None
    computed: Any = None
    witness: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise MaolpermError(f"unknown report status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise MaolpermError(f"failed check {self.check!r} must carry a witness")
        object.__setattr__(self, "expected", jsonable(self.expected))
        object.__setattr__(self, "computed", jsonable(self.computed))
        object.__setattr__(self, "witness", jsonable(dict(self.witness)))
        object.__setattr__(self, "details", jsonable(dict(self.details)))
        object.__setattr__(self, "wall_time", float(self.wall_time))

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        return cls(
            check=data["check"],
            status=data["status"],
            expected=data.get("expected"),
            computed=data.get("computed"),
            witness=dict(data.get("witness") or {}),
            wall_time=float(data.get("wall_time", 0.0)),
            details=dict(data.get("details") or {}),
        )

    def line(self) -> str:
        if self.status == "skipped":
            return f"[SKIPPED] {self.check}: {self.details.get('reason', '')}"
        if self.expected is None:
            return f"[{self.status.upper():7}] {self.check}: {self.computed}"
        return f"[{self.status.upper():7}] {self.check}: expected {self.expected}, computed {self.computed}"

    def facts_line(self) -> str:
        """Wall time, witness and details on one indented line, as in the JSON report."""
        facts: dict[str, Any] = {"wall_time": self.wall_time}
        if self.witness:
            facts["witness"] = self.witness
        details = {k: v for k, v in self.details.items() if not (self.status == "skipped" and k == "reason")}
        if details:
            facts["details"] = details
        return "    " + json.dumps(facts, sort_keys=True)

    def value_of(self, key: str) -> Any:
        """A report attribute or, failing that, a details entry."""
        if key in ("check", "status", "expected", "computed", "wall_time"):
            return getattr(self, key)
        return self.details.get(key, "")


def verdict(check: str, expected: Any, computed: Any, witness: dict[str, Any] | None = None,
            wall_time: float = 0.0, **details: Any) -> VerificationReport:
    """pass when expected == computed, otherwise fail with the witness (or the two values)."""
    if expected == computed:
        return VerificationReport(check, "pass", expected, computed, witness or {}, wall_time, details)
    witness = witness or {"expected": expected, "computed": computed}
    return VerificationReport(check, "fail", expected, computed, witness, wall_time, details)


def skipped(check: str, reason: str) -> VerificationReport:
    return VerificationReport(check, "skipped", details={"reason": reason})


class Timer:
    elapsed: float = 0.0


@contextmanager
def timed(check: str) -> Iterator[Timer]:
    """Measure wall time of a block; the result is on the yielded timer."""
    timer = Timer()
    start = time.perf_counter()
    try:
        yield timer
    finally:
        timer.elapsed = time.perf_counter() - start
        logger.debug(f"{check}: {timer.elapsed:.3f}s")


def aligned_table(reports: list[VerificationReport], columns: tuple[tuple[str, str], ...]) -> str:
    """Reports as a text table, one row each; columns are (header, report field) pairs."""
    header = [title for title, _ in columns]
    rows = [[str(r.value_of(key)) for _, key in columns] for r in reports]
    widths = [max(len(cell) for cell in col) for col in zip(header, *rows)]
    rule = "  ".join("-" * w for w in widths)
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in [header, *rows]]
    return "\n".join([lines[0], rule, *lines[1:]])


@dataclass
class ReportBundle:
    command: str
    reports: list[VerificationReport] = field(default_factory=list)
    version: str = SCHEMA_VERSION
    columns: tuple[tuple[str, str], ...] = ()

    def add(self, report: VerificationReport) -> VerificationReport:
        self.reports.append(report)
        return report

    def extend(self, reports: list[VerificationReport]) -> None:
        self.reports.extend(reports)

    @property
    def success(self) -> bool:
        return all(r.status != "fail" for r in self.reports)

    @property
    def counts(self) -> dict[str, int]:
        return {s: sum(r.status == s for r in self.reports) for s in STATUSES}

    def to_dict(self) -> dict[str, Any]:
        return {
            "success": self.success,
            "version": self.version,
            "command": self.command,
            "counts": self.counts,
            "reports": [r.to_dict() for r in self.reports],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ReportBundle:
        return cls(data["command"], [VerificationReport.from_dict(r) for r in data["reports"]], data["version"])

    def to_json(self) -> str:
        payload = self.to_dict()
        validate_payload(payload)
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        """Report lines, each followed by its facts; a column table first when columns are set."""
        if not self.reports:
            return f"{self.command}: no checks run"
        lines = [aligned_table(self.reports, self.columns), ""] if self.columns else []
        for r in self.reports:
            lines.append(r.line())
            lines.append(r.facts_line())
        c = self.counts
        lines.append(f"{self.command}: {c['pass']} passed, {c['fail']} failed, {c['skipped']} skipped")
        return "\n".join(lines)


@cache
def report_schema() -> dict[str, Any]:
    text = resources.files("src").joinpath("schemas/report.schema.json").read_text()
    return json.loads(text)


def validate_payload(payload: dict[str, Any]) -> None:
    """Raise jsonschema.ValidationError when a bundle payload does not match the shipped schema."""
    jsonschema.validate(payload, report_schema())
