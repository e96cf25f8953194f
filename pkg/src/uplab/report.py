"""Verdicts and reports: the record types every inequality check produces."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path


@dataclass(frozen=True)
class Verdict:
    """Outcome of one inequality check: lhs >= rhs up to a relative slack."""

    check_id: str
    lhs: float
    rhs: float
    margin: float
    status: str  # pass | fail | skipped
    notes: str = ""


def make_verdict(check_id: str, lhs: float, rhs: float, rel_tol: float, notes: str = "") -> Verdict:
    """Judge lhs >= rhs with slack rel_tol * max(|lhs|, |rhs|, 1)."""
    lhs = float(lhs)
    rhs = float(rhs)
    margin = lhs - rhs
    slack = rel_tol * max(abs(lhs), abs(rhs), 1.0)
    status = "pass" if margin >= -slack else "fail"
    return Verdict(check_id, lhs, rhs, margin, status, notes)


def skipped_verdict(check_id: str, reason: str) -> Verdict:
    return Verdict(check_id, math.nan, math.nan, math.nan, "skipped", reason)


def failed_verdict(check_id: str, reason: str) -> Verdict:
    return Verdict(check_id, math.nan, math.nan, math.nan, "fail", reason)


def _num(x: float):
    return float(x) if math.isfinite(x) else None


def verdict_to_dict(v: Verdict) -> dict:
    return {
        "check": v.check_id,
        "lhs": _num(v.lhs),
        "rhs": _num(v.rhs),
        "margin": _num(v.margin),
        "status": v.status,
        "notes": v.notes,
    }


@dataclass(frozen=True)
class Report:
    """All verdicts for one scenario run, with grid and summary metadata."""

    scenario: str
    grid: dict
    verdicts: tuple
    summary: dict
    timestamp: str = ""

    @property
    def failed(self) -> int:
        return sum(1 for v in self.verdicts if v.status == "fail")


def build_summary(verdicts) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for v in verdicts:
        counts[v.status] = counts.get(v.status, 0) + 1
    counts["total"] = len(verdicts)
    counts["all_passed"] = counts["fail"] == 0
    return counts


def report_to_json(report: Report, include_timestamp: bool = True) -> str:
    """Canonical JSON: sorted keys, verdicts sorted by check id.

    With include_timestamp=False the output is byte-identical across repeat
    runs of the same scenario, which the determinism tests rely on.
    """
    payload = {
        "scenario": report.scenario,
        "grid": report.grid,
        "verdicts": [verdict_to_dict(v) for v in sorted(report.verdicts, key=lambda v: v.check_id)],
        "summary": report.summary,
    }
    if include_timestamp:
        payload["timestamp"] = report.timestamp
    return json.dumps(payload, indent=2, sort_keys=True)


def write_report_json(report: Report, path) -> None:
    Path(path).write_text(report_to_json(report) + "\n")


def write_verdicts_csv(report: Report, path) -> None:
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["check", "lhs", "rhs", "margin", "status", "notes"])
        for v in sorted(report.verdicts, key=lambda v: v.check_id):
            writer.writerow([v.check_id, _num(v.lhs), _num(v.rhs), _num(v.margin), v.status, v.notes])
