"""Violation reports shared by every checker in the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def _plain(value: Any) -> Any:
    """Convert numpy scalars / tuples into JSON-friendly Python values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass(frozen=True)
class Violation:
    check: str
    witness: Any
    count: int = 1
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "witness": _plain(self.witness),
            "count": int(self.count),
            "detail": self.detail,
        }


@dataclass
class Report:
    """A list of violated identities; empty means the object is valid."""

    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, witness: Any, count: int = 1, detail: str = "") -> None:
        self.violations.append(Violation(check, witness, count, detail))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.check, v.witness, v.count, v.detail))

    def checks(self) -> list[str]:
        return [v.check for v in self.violations]

    def __len__(self) -> int:
        return len(self.violations)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}
