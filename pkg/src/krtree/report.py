from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexample: Any = None
    detail: str = ""
    skipped: bool = False
    seconds: float = 0.0

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "skipped": self.skipped,
            "counterexample": self.counterexample,
            "detail": self.detail,
            "seconds": round(self.seconds, 6),
        }


def passed(name: str, detail: str = "") -> CheckResult:
    return CheckResult(name, True, detail=detail)


def failed(name: str, counterexample: Any, detail: str = "") -> CheckResult:
    return CheckResult(name, False, counterexample=counterexample, detail=detail)


def skipped(name: str, detail: str) -> CheckResult:
    # A skipped check does not count as a failure.
    return CheckResult(name, True, detail=detail, skipped=True)


@dataclass
class RunReport:
    subject: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 2

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def extend(self, results) -> None:
        self.checks.extend(results)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_dict(self, timing: bool = True) -> dict:
        checks = [c.to_dict() for c in self.checks]
        if not timing:
            for c in checks:
                del c["seconds"]
        return {"subject": self.subject, "ok": self.ok, "checks": checks}

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "SKIP" if c.skipped else ("PASS" if c.passed else "FAIL")
            line = f"{status}  {self.subject}: {c.name}"
            if c.detail:
                line += f"  ({c.detail})"
            if not c.passed:
                line += f"  counterexample={c.counterexample!r}"
            out.append(line)
        return out


def run_timed(fn, *args, **kwargs) -> CheckResult:
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    result.seconds = time.perf_counter() - start
    return result
