"""Verification reports shared by the theorem drivers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

__all__ = ["Check", "Report", "PASS", "FAIL", "INCONCLUSIVE"]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


@dataclass
class Check:
    name: str
    status: str
    lhs: object = None
    rhs: object = None
    note: str | None = None

    def to_json(self):
        out = {"name": self.name, "status": self.status, "lhs": self.lhs, "rhs": self.rhs}
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def compare(cls, name, lhs, rhs, note=None):
        return cls(name, PASS if lhs == rhs else FAIL, lhs, rhs, note)

    @classmethod
    def truth(cls, name, ok, lhs=None, rhs=None, note=None):
        return cls(name, PASS if ok else FAIL, lhs, rhs, note)


@dataclass
class Report:
    theorem: str
    profile: dict
    checks: list = dc_field(default_factory=list)
    field: str = "QQ"
    seed: int | None = None
    extra: dict = dc_field(default_factory=dict)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def check(self, name) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "profile": self.profile,
            "checks": [c.to_json() for c in self.checks],
            "field": self.field,
            "seed": self.seed,
            "status": self.status,
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def render_text(self) -> str:
        lines = [f"theorem: {self.theorem}", f"profile: {json.dumps(self.profile)}",
                 f"field: {self.field}", f"seed: {self.seed}"]
        width = max((len(c.name) for c in self.checks), default=0)
        for c in self.checks:
            line = f"  [{c.status:>12}] {c.name:<{width}}  lhs={c.lhs}  rhs={c.rhs}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        lines.append(f"status: {self.status}")
        return "\n".join(lines)
