"""Machine-readable verification reports.

A report is an ordered list of checks, each carrying the claim it verifies,
the expected and computed values, a provenance tag (``paper`` for values
stated by the source material, ``derived`` for values established by our own
exhaustive computation, ``trivial`` for arithmetic), a pass flag and wall
time.  Serialization is deterministic apart from the timing field.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator

PAPER = "paper"
DERIVED = "derived"
TRIVIAL = "trivial"


@dataclass(frozen=True)
class CheckRecord:
    name: str
    paper_anchor: str
    expected: object
    actual: object
    provenance: str
    passed: bool
    millis: float

    def to_json_obj(self) -> dict:
        return {
            "name": self.name,
            "paper_anchor": self.paper_anchor,
            "expected": self.expected,
            "actual": self.actual,
            "provenance": self.provenance,
            "pass": self.passed,
            "millis": round(self.millis, 3),
        }

    def summary_line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.name}: expected {self.expected!r}, got {self.actual!r} ({self.provenance})"


@dataclass
class ReproReport:
    checks: list[CheckRecord] = field(default_factory=list)

    def add(
        self,
        name: str,
        anchor: str,
        expected: object,
        actual: object,
        provenance: str,
        millis: float,
        passed: bool | None = None,
    ) -> CheckRecord:
        if passed is None:
            passed = expected == actual
        rec = CheckRecord(name, anchor, expected, actual, provenance, passed, millis)
        self.checks.append(rec)
        return rec

    @contextmanager
    def timed(
        self, name: str, anchor: str, expected: object, provenance: str
    ) -> Iterator[dict]:
        """Run a block that stores its result under ``out["actual"]``."""
        out: dict = {"actual": None, "passed": None}
        t0 = time.perf_counter()
        try:
            yield out
        except Exception as exc:  # a crashed check is a failed check
            out["actual"] = f"error: {exc}"
            out["passed"] = False
        millis = 1000.0 * (time.perf_counter() - t0)
        self.add(name, anchor, expected, out["actual"], provenance, millis, out["passed"])

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.passed]

    def to_json(self, *, zero_millis: bool = False) -> str:
        objs = [c.to_json_obj() for c in self.checks]
        if zero_millis:
            for o in objs:
                o["millis"] = 0.0
        return json.dumps(objs, indent=2, sort_keys=False) + "\n"

    def summary(self) -> str:
        lines = [c.summary_line() for c in self.checks]
        n_fail = len(self.failures)
        verdict = "all checks passed" if n_fail == 0 else f"{n_fail} check(s) FAILED"
        lines.append(f"-- {len(self.checks)} checks: {verdict}")
        return "\n".join(lines)
