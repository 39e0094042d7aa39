"""Check records and suite reports."""

import logging
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)


@dataclass
class CheckRecord:
    """One check outcome. Passing checks are aggregated through ``count``."""

    check: str
    passed: bool
    count: int = 1
    modes: Optional[List[int]] = None
    witness: Optional[Any] = None
    detail: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"check": self.check, "passed": self.passed, "count": self.count}
        if self.modes is not None:
            data["modes"] = list(self.modes)
        if self.witness is not None:
            data["witness"] = self.witness
        if self.detail is not None:
            data["detail"] = self.detail
        return data


@dataclass
class Report:
    """Outcome of one suite."""

    suite: str
    records: List[CheckRecord] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    max_failures: int = 50

    def __post_init__(self):
        """Initialize the pass counters."""
        self._passes: Dict[str, int] = {}
        self._failures = 0

    def record_pass(self, check: str, count: int = 1) -> None:
        """Count a passing check."""
        self._passes[check] = self._passes.get(check, 0) + count

    def record_failure(self, check: str, modes: Optional[List[int]] = None,
                       witness: Optional[Any] = None, detail: Optional[Dict[str, Any]] = None) -> None:
        """Record a failing check with its witness."""
        self._failures += 1
        logger.warning("%s: %s failed (modes=%s)", self.suite, check, modes)
        if self._failures <= self.max_failures:
            self.records.append(CheckRecord(check, False, 1, modes, witness, detail))

    def record(self, check: str, passed: bool, **kwargs) -> None:
        """Record a single check either way."""
        if passed:
            self.record_pass(check)
        else:
            self.record_failure(check, **kwargs)

    def merge(self, other: "Report") -> None:
        """Fold another report into this one; check ids are prefixed with its suite name."""
        for check, count in other._passes.items():
            self.record_pass(f"{other.suite}/{check}", count)
        dropped = other._failures
        for rec in other.records:
            if rec.passed:
                continue
            dropped -= 1
            self._failures += 1
            if self._failures <= self.max_failures:
                self.records.append(replace(rec, check=f"{other.suite}/{rec.check}"))
        self._failures += dropped
        self.summary.setdefault("suites", {})[other.suite] = other.status
        if other.summary:
            self.summary[other.suite] = other.summary
        self.timing.update({f"{other.suite}/{k}": v for k, v in other.timing.items()})

    @property
    def failures(self) -> int:
        return self._failures

    @property
    def passed(self) -> bool:
        return self._failures == 0

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def all_records(self) -> List[CheckRecord]:
        """Aggregated passes (sorted by check id) followed by failures in discovery order."""
        passes = [CheckRecord(check, True, count) for check, count in sorted(self._passes.items())]
        return passes + [r for r in self.records if not r.passed]

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "suite": self.suite,
            "status": self.status,
            "failures": self._failures,
            "records": [r.to_dict() for r in self.all_records()],
            "summary": self.summary,
            "config": self.config,
        }
        if include_timing:
            data["timing"] = self.timing
        return data

    def to_frame(self) -> pd.DataFrame:
        """Per-check summary table."""
        rows = []
        for check, count in sorted(self._passes.items()):
            rows.append({"suite": self.suite, "check": check, "passed": count, "failed": 0})
        for rec in self.records:
            if rec.passed:
                continue
            found = next((r for r in rows if r["check"] == rec.check), None)
            if found is None:
                found = {"suite": self.suite, "check": rec.check, "passed": 0, "failed": 0}
                rows.append(found)
            found["failed"] += 1
        return pd.DataFrame(rows, columns=["suite", "check", "passed", "failed"])
