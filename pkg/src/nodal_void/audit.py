"""Pass/fail records for numeric inequality checks."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field


def _clean(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if hasattr(v, "item") and callable(v.item):
        return _clean(v.item())
    return v


@dataclass
class Check:
    description: str
    value: float
    bound: float
    relation: str  # "<=", ">=", "<", ">", "==" or "flag"
    passed: bool
    slack: float = 0.0

    @property
    def margin(self) -> float:
        if self.relation in ("<=", "<"):
            return self.bound - self.value
        if self.relation in (">=", ">"):
            return self.value - self.bound
        if self.relation == "==":
            return -abs(self.value - self.bound)
        return 0.0

    def as_dict(self) -> dict:
        return _clean(
            {
                "description": self.description,
                "value": self.value,
                "bound": self.bound,
                "relation": self.relation,
                "slack": self.slack,
                "margin": self.margin,
                "pass": self.passed,
            }
        )


@dataclass
class AuditReport:
    lemma_id: str
    checks: list[Check] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, description: str) -> Check:
        for c in self.checks:
            if c.description == description:
                return c
        raise KeyError(description)

    def le(self, description: str, value: float, bound: float, slack: float = 0.0) -> Check:
        return self._add(Check(description, float(value), float(bound), "<=", bool(value <= bound + slack), slack))

    def lt(self, description: str, value: float, bound: float) -> Check:
        return self._add(Check(description, float(value), float(bound), "<", bool(value < bound)))

    def ge(self, description: str, value: float, bound: float, slack: float = 0.0) -> Check:
        return self._add(Check(description, float(value), float(bound), ">=", bool(value >= bound - slack), slack))

    def gt(self, description: str, value: float, bound: float) -> Check:
        return self._add(Check(description, float(value), float(bound), ">", bool(value > bound)))

    def close(self, description: str, value: float, target: float, tol: float) -> Check:
        return self._add(Check(description, float(value), float(target), "==", bool(abs(value - target) <= tol), tol))

    def flag(self, description: str, ok: bool, value: float = math.nan) -> Check:
        return self._add(Check(description, float(value), math.nan, "flag", bool(ok)))

    def _add(self, c: Check) -> Check:
        self.checks.append(c)
        return c

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma_id,
            "pass": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "info": _clean(self.info),
            "notes": list(self.notes),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    def table(self) -> str:
        width = max([len(c.description) for c in self.checks] + [10])
        lines = [f"[{self.lemma_id}] {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            if c.relation == "flag":
                lines.append(f"  {mark} {c.description:<{width}}")
            else:
                lines.append(f"  {mark} {c.description:<{width}}  {c.value:.6g} {c.relation} {c.bound:.6g}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)
