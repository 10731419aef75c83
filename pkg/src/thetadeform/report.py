"""Check results with a three-valued status."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.UNDECIDED: 2}[self]


def combine(statuses) -> Status:
    """Failure dominates, then undecided; an empty collection passes."""
    statuses = set(statuses)
    if Status.FAIL in statuses:
        return Status.FAIL
    if Status.UNDECIDED in statuses:
        return Status.UNDECIDED
    return Status.PASS


@dataclass
class CheckResult:
    name: str
    status: Status
    detail: str = ""
    witness: Any = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status.value}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    def line(self) -> str:
        text = f"[{self.status.value.upper():9}] {self.name}"
        return text + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    """Ordered collection of check results for one subject."""

    subject: str
    results: list[CheckResult] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def status(self) -> Status:
        return combine(r.status for r in self.results)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def add(self, name: str, status: Status, detail: str = "", witness: Any = None) -> CheckResult:
        result = CheckResult(name, status, detail, witness)
        self.results.append(result)
        return result

    def extend(self, other: Report, prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.status, r.detail, r.witness))
        self.extra.update(other.extra)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status is not Status.PASS]

    def to_json(self) -> dict:
        out = {
            "subject": self.subject,
            "status": self.status.value,
            "checks": [r.to_json() for r in self.results],
        }
        out.update(self.extra)
        return out

    def lines(self) -> list[str]:
        head = f"{self.subject}: {self.status.value.upper()}"
        return [head] + ["  " + r.line() for r in self.results]
