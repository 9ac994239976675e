"""Structured pass/fail results shared by the checkers and the CLI."""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Any


class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass
class Report:
    check: str
    status: Status = Status.PASS
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def fail(self, reason: str, **data: Any) -> None:
        self.status = Status.FAIL
        self.witnesses.append({"reason": reason, **data})

    def unknown(self, reason: str, **data: Any) -> None:
        if self.status is Status.PASS:
            self.status = Status.UNKNOWN
        self.witnesses.append({"reason": reason, "unknown": True, **data})

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "status": self.status.value, "stats": self.stats}
        if self.witnesses:
            out["witness"] = self.witnesses
            g6 = [w["graph6"] for w in self.witnesses if "graph6" in w]
            if g6:
                out["graph6"] = g6[0]
        return out

    def __str__(self) -> str:
        head = f"{self.check}: {self.status.value}"
        if self.witnesses:
            head += f" ({len(self.witnesses)} witness(es); first: {self.witnesses[0]})"
        return head


def merge_status(reports: list[Report]) -> Status:
    if any(r.status is Status.FAIL for r in reports):
        return Status.FAIL
    if any(r.status is Status.UNKNOWN for r in reports):
        return Status.UNKNOWN
    return Status.PASS


class Timer:
    """Context manager recording wall time into a report's stats."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self) -> "Timer":
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc: object) -> None:
        self.report.stats["wall_s"] = round(time.perf_counter() - self.t0, 4)
