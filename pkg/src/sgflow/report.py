from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a structural check, with enough detail to locate a failure."""

    name: str
    passed: bool
    details: dict[str, Any] = field(default_factory=dict)
    failures: list[dict[str, Any]] = field(default_factory=list)
    skipped: bool = False

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict[str, Any]:
        out = {"name": self.name, "passed": self.passed}
        if self.skipped:
            out["skipped"] = True
        if self.details:
            out["details"] = self.details
        if self.failures:
            out["failures"] = self.failures
        return out
