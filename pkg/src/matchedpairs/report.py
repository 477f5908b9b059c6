"""Structured validation results.

Checks never raise on a failed law; they collect :class:`Violation` entries
so that callers (and tests) can inspect the exact witness.
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def as_dict(self) -> dict:
        return {"law": self.law, "witness": _jsonable(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str = ""
    violations: list = field(default_factory=list)
    checked: int = 0
    # cap on recorded violations per law, to keep reports readable
    per_law_limit: int = 20
    _counts: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def check(self, condition: bool, law: str, witness: tuple, detail: str = "") -> bool:
        self.checked += 1
        if not condition:
            self.add(law, witness, detail)
        return condition

    def add(self, law: str, witness: tuple, detail: str = "") -> None:
        n = self._counts.get(law, 0)
        self._counts[law] = n + 1
        if n < self.per_law_limit:
            self.violations.append(Violation(law, tuple(witness), detail))

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        self.checked += other.checked
        for v in other.violations:
            self.add(prefix + v.law, v.witness, v.detail)

    def laws(self) -> set:
        return {v.law for v in self.violations}

    def first(self, law: str | None = None) -> Violation | None:
        for v in self.violations:
            if law is None or v.law == law:
                return v
        return None

    def as_dict(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checked": self.checked,
            "violation_counts": dict(sorted(self._counts.items())),
            "violations": [v.as_dict() for v in self.violations],
        }

    def __str__(self) -> str:
        if self.ok:
            return f"{self.subject or 'report'}: ok ({self.checked} checks)"
        lines = [f"{self.subject or 'report'}: {sum(self._counts.values())} violation(s)"]
        for v in self.violations:
            lines.append(f"  {v.law} at {v.witness!r} {v.detail}".rstrip())
        return "\n".join(lines)


def _jsonable(obj):
    if isinstance(obj, (list, tuple)):
        return [_jsonable(o) for o in obj]
    if isinstance(obj, (str, int, float, bool)) or obj is None:
        return obj
    return repr(obj)
