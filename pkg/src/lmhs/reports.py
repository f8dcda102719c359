"""Structured pass/fail reports shared by all check families."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS, FAIL, SKIP = "pass", "fail", "skipped"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    location: str
    verdict: str  # pass | fail | skipped
    witness: str = ""

    def line(self) -> str:
        mark = {PASS: "[pass]", FAIL: "[FAIL]", SKIP: "[skip]"}[self.verdict]
        tail = f"  ({self.witness})" if self.witness else ""
        return f"{mark} {self.check_id} @ {self.location}{tail}"


@dataclass
class Report:
    results: list = field(default_factory=list)

    def add(self, check_id: str, location: str, ok: bool, witness: str = "") -> None:
        self.results.append(CheckResult(check_id, location, PASS if ok else FAIL, witness))

    def skip(self, check_id: str, location: str, reason: str = "") -> None:
        self.results.append(CheckResult(check_id, location, SKIP, reason))

    def extend(self, other: "Report") -> None:
        self.results.extend(other.results)

    @property
    def ok(self) -> bool:
        return all(r.verdict != FAIL for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if r.verdict == FAIL]

    def lines(self) -> list:
        return [r.line() for r in self.results]

    def as_dict(self) -> list:
        return [
            {"check": r.check_id, "location": r.location, "verdict": r.verdict, "witness": r.witness}
            for r in self.results
        ]
