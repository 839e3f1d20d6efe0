"""Small result records shared by the verification harnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional


@dataclass
class Check:
    """Outcome of one named identity checked on ``checked`` inputs."""

    name: str
    passed: bool = True
    checked: int = 0
    failure: Optional[str] = None

    def fail(self, locus: str) -> None:
        if self.passed:
            self.passed = False
            self.failure = locus

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" first failure: {self.failure}" if self.failure else ""
        return f"{status}  {self.name}  [{self.checked} checked]{tail}"


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: "Report") -> None:
        self.checks.extend(other.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        head = f"{self.title}: {'PASS' if self.passed else 'FAIL'}"
        return "\n".join([head] + ["  " + c.line() for c in self.checks])
