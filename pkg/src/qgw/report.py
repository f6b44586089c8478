"""CheckReport: the outcome of one named verification."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field


@dataclass
class Witness:
    location: str
    residual: str

    def to_dict(self) -> dict:
        return {"location": self.location, "residual": self.residual}


@dataclass
class CheckReport:
    check: str
    subject: str
    passed: bool = True
    witnesses: list = field(default_factory=list)
    derived: dict = field(default_factory=dict)
    elapsed_ms: int = 0

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def fail(self, location: str, residual) -> None:
        self.passed = False
        self.witnesses.append(Witness(location, str(residual)))

    def note(self, location: str, residual) -> None:
        """Record a witness without changing the verdict."""
        self.witnesses.append(Witness(location, str(residual)))

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        self.passed = self.passed and other.passed
        for w in other.witnesses:
            self.witnesses.append(Witness(prefix + w.location, w.residual))
        for key, value in other.derived.items():
            self.derived[prefix + key] = value

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "check": self.check,
            "subject": self.subject,
            "status": self.status,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "elapsed_ms": self.elapsed_ms if timing else 0,
        }
        if self.derived:
            out["derived"] = self.derived
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True)

    def summary(self) -> str:
        line = f"[{self.status.upper()}] {self.check} {self.subject} ({self.elapsed_ms} ms)"
        if self.witnesses and not self.passed:
            w = self.witnesses[0]
            line += f"\n    first witness at {w.location}: {w.residual}"
        return line


@contextmanager
def timed(report: CheckReport):
    start = time.perf_counter()
    try:
        yield report
    finally:
        report.elapsed_ms = int(round((time.perf_counter() - start) * 1000))
