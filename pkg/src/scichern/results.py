"""Pass/fail records shared by the verification steps."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": "PASS" if self.passed else "FAIL", **self.detail}


@dataclass
class StepReport:
    name: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    # certificate objects kept for re-validation; not serialized
    certificates: dict = field(default_factory=dict, repr=False)

    def add(self, name: str, passed: bool, **detail) -> Check:
        check = Check(name, bool(passed), detail)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        out = {
            "status": "PASS" if self.passed else "FAIL",
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out
