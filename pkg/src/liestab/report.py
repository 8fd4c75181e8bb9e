"""Check rows and structure reports shared by the verifiers and the grid harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, NA, FLAG = "pass", "fail", "n/a", "flag"


@dataclass
class Check:
    """One predicted-vs-computed comparison.

    ``status`` is ``pass``/``fail`` for exact predicates, ``n/a`` when the
    governing statement does not apply to the cell, and ``flag`` for
    informational rows where a literal formula disagrees with the certified
    candidate (these never count as failures).
    """

    name: str
    clause: str
    predicted: Any
    computed: Any
    status: str

    @property
    def passed(self) -> bool | None:
        if self.status == PASS:
            return True
        if self.status == FAIL:
            return False
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "paper_clause": self.clause,
            "predicted": self.predicted,
            "computed": self.computed,
            "pass": self.passed,
            "status": self.status,
        }


def compare(name: str, clause: str, predicted, computed) -> Check:
    return Check(name, clause, predicted, computed, PASS if predicted == computed else FAIL)


def truth(name: str, clause: str, ok: bool, predicted=True, computed=None) -> Check:
    return Check(name, clause, predicted, ok if computed is None else computed, PASS if ok else FAIL)


def not_applicable(name: str, clause: str, computed=None, predicted=None) -> Check:
    return Check(name, clause, predicted, computed, NA)


def flag(name: str, clause: str, predicted, computed) -> Check:
    """Informational row; passes silently when the values agree."""
    return Check(name, clause, predicted, computed, PASS if predicted == computed else FLAG)


@dataclass
class StructureReport:
    cell: dict
    checks: list[Check] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, NA: 0, FLAG: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self, timings: bool = True) -> dict:
        out = {
            "cell": self.cell,
            "summary": self.summary,
            "pass": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }
        if timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_text(self) -> str:
        lines = [f"cell {self.cell}"]
        for c in self.checks:
            lines.append(f"  [{c.status:>4}] {c.name} ({c.clause}): predicted={c.predicted} computed={c.computed}")
        n = self.counts()
        lines.append(f"  {n[PASS]} pass, {n[FAIL]} fail, {n[NA]} n/a, {n[FLAG]} flag")
        return "\n".join(lines)
