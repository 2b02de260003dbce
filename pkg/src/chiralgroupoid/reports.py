"""Validation reports and error types shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class FormatError(ValueError):
    """Input has the wrong shape (dimensions, index ranges, JSON layout)."""


class DomainError(ValueError):
    """An operation was called outside its domain, e.g. a character not in D(s*s)."""


class GuardrailError(RuntimeError):
    """Exhaustive search would exceed the node budget and ``force`` was not set."""


class VerificationFailed(Exception):
    """A construction could not be certified; ``report`` carries the witnesses."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class Violation:
    invariant: str
    witness: tuple
    detail: str = ""

    def to_json(self) -> dict:
        return {"invariant": self.invariant, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str
    violations: list[Violation] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.violations

    def add(self, invariant: str, witness: tuple, detail: str = "") -> None:
        self.violations.append(Violation(invariant, tuple(witness), detail))

    def first(self, invariant: str) -> Violation | None:
        for v in self.violations:
            if v.invariant == invariant:
                return v
        return None

    def invariants_violated(self) -> list[str]:
        seen: list[str] = []
        for v in self.violations:
            if v.invariant not in seen:
                seen.append(v.invariant)
        return seen

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for v in other.violations:
            self.violations.append(Violation(prefix + v.invariant, v.witness, v.detail))
        for k, n in other.checked.items():
            self.checked[prefix + k] = self.checked.get(prefix + k, 0) + n

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "valid": self.valid,
            "violations": [v.to_json() for v in self.violations],
            "checked": dict(sorted(self.checked.items())),
        }

    def __str__(self) -> str:
        if self.valid:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        for v in self.violations:
            lines.append(f"  {v.invariant} at {v.witness} {v.detail}".rstrip())
        return "\n".join(lines)
