"""
Report - result objects for checks, bounded searches and proof verdicts
Every result carries a pass flag plus diagnostics and serializes via to_dict()
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

DEFAULT_MAX_FAILURES = 20


@dataclass
class Verdict:
    """Outcome of a bounded model search"""
    holds: bool
    models_checked: int
    bound: int
    countermodel: Optional[Dict[str, Any]] = None

    @property
    def status(self) -> str:
        return "no-countermodel-up-to-bound" if self.holds else "countermodel"

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "status": self.status,
            "holds": self.holds,
            "bound": self.bound,
            "models_checked": self.models_checked,
        }
        if self.countermodel is not None:
            result["countermodel"] = self.countermodel
        return result


@dataclass
class CheckReport:
    """Counts and failures of one verification battery"""
    check: str
    params: Dict[str, Any] = field(default_factory=dict)
    checked: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    failure_count: int = 0
    extra: Dict[str, Any] = field(default_factory=dict)
    max_failures: int = DEFAULT_MAX_FAILURES

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def tick(self, n: int = 1):
        self.checked += n

    def fail(self, **details):
        """Record a violation; only the first max_failures are kept verbatim"""
        self.failure_count += 1
        if len(self.failures) < self.max_failures:
            self.failures.append(details)

    def expect(self, condition: bool, **details) -> bool:
        self.checked += 1
        if not condition:
            self.fail(**details)
        return condition

    def merge(self, other: "CheckReport"):
        self.checked += other.checked
        self.failure_count += other.failure_count
        room = self.max_failures - len(self.failures)
        if room > 0:
            self.failures.extend(other.failures[:room])

    def to_dict(self) -> Dict[str, Any]:
        result = {
            "check": self.check,
            "passed": self.passed,
            "checked": self.checked,
            "failure_count": self.failure_count,
            "failures": self.failures,
        }
        result.update(self.params)
        result.update(self.extra)
        return result


@dataclass
class SuiteReport:
    """Aggregate of several CheckReports"""
    name: str
    checks: List[CheckReport] = field(default_factory=list)
    params: Dict[str, Any] = field(default_factory=dict)

    def add(self, report: CheckReport) -> CheckReport:
        self.checks.append(report)
        return report

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "params": self.params,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class ProofVerdict:
    """Outcome of checking a proof; bad_line is 1-based"""
    accepted: bool
    lines_checked: int
    bad_line: Optional[int] = None
    reason: Optional[str] = None
    conclusion: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        result: Dict[str, Any] = {"accepted": self.accepted, "lines_checked": self.lines_checked}
        if self.conclusion is not None:
            result["conclusion"] = self.conclusion
        if not self.accepted:
            result["bad_line"] = self.bad_line
            result["reason"] = self.reason
        return result
