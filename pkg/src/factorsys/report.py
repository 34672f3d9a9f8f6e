"""Pass/fail reports shared by all verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Type

from .errors import AxiomViolation, FactorSysError

MAX_WITNESSES = 3


@dataclass
class Check:
    tag: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class Report:
    title: str = ""
    checks: list = field(default_factory=list)

    def add(self, tag: str, passed: bool, **detail) -> bool:
        self.checks.append(Check(tag, bool(passed), {k: str(v) for k, v in detail.items()}))
        return bool(passed)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self, tag: Optional[str] = None) -> list:
        return [c for c in self.checks if not c.passed and (tag is None or c.tag == tag)]

    def tags(self) -> list:
        seen = []
        for c in self.checks:
            if c.tag not in seen:
                seen.append(c.tag)
        return seen

    def passed(self, tag: str) -> bool:
        return all(c.passed for c in self.checks if c.tag == tag)

    def raise_if_failed(self, exc: Type[FactorSysError] = AxiomViolation):
        bad = self.failures()
        if not bad:
            return self
        first = bad[0]
        if issubclass(exc, AxiomViolation) and exc is AxiomViolation:
            raise AxiomViolation(first.tag, self.title, **first.detail)
        raise exc(f"{first.tag} failed ({self.title})", **first.detail)

    def summary(self) -> dict:
        out = {}
        for tag in self.tags():
            group = [c for c in self.checks if c.tag == tag]
            fails = [c for c in group if not c.passed]
            out[tag] = {"checked": len(group), "failed": len(fails),
                        "witnesses": [c.detail for c in fails[:MAX_WITNESSES]]}
        return out

    def to_json(self) -> dict:
        return {"title": self.title, "ok": self.ok, "identities": self.summary()}
