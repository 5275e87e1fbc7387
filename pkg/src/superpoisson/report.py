"""Check results shared by the verification routines."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    samples: int = 0
    witness: Optional[Dict[str, object]] = None
    reason: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        d = {"name": self.name, "status": self.status, "samples": self.samples}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.reason is not None:
            d["reason"] = self.reason
        return d

    def line(self) -> str:
        text = f"{self.status.upper():7} {self.name}"
        if self.samples:
            text += f" [{self.samples} cases]"
        if self.reason:
            text += f" ({self.reason})"
        if self.witness:
            inner = "; ".join(f"{k}={_fmt(v)}" for k, v in self.witness.items())
            text += f"\n        witness: {inner}"
        return text


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


@dataclass
class Report:
    title: str
    seed: int = 0
    checks: List[CheckResult] = field(default_factory=list)
    wall_time: float = 0.0

    def add(self, check: CheckResult) -> CheckResult:
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(
                CheckResult(prefix + c.name, c.status, c.samples, c.witness, c.reason)
            )

    @property
    def passed(self) -> bool:
        """True when no check failed (skipped checks do not count)."""
        return all(c.status != FAIL for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        # wall time is left out so identical inputs give identical documents
        return {
            "title": self.title,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def text(self) -> str:
        lines = [f"{self.title} (seed {self.seed})"]
        lines += ["  " + c.line().replace("\n", "\n  ") for c in self.checks]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict} in {self.wall_time:.2f}s" if self.wall_time else verdict)
        return "\n".join(lines)


class Timer:
    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self.start = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.wall_time = time.perf_counter() - self.start
        return False


def first_failure(name: str, cases: Sequence, test, describe) -> CheckResult:
    """Run ``test`` over ``cases``; the result carries the first failing case.

    ``test(case)`` returns the defect (falsy when the case passes).
    ``describe(case, defect)`` builds the witness dict.
    """
    count = 0
    for case in cases:
        count += 1
        defect = test(case)
        if defect:
            return CheckResult(name, FAIL, count, witness=describe(case, defect))
    return CheckResult(name, PASS, count)
