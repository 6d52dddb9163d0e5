"""Check reports: a count of cases examined plus counterexample witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

# cap on stored witnesses; the count of failures is always exact
MAX_WITNESSES = 10


def plain(x):
    """JSON-friendly rendering of engine values (terms, step functions, tuples)."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(plain(v) for v in x)
    return str(x)


@dataclass
class Report:
    name: str
    checked: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def passed_case(self) -> None:
        self.checked += 1

    def fail(self, witness, lhs=None, rhs=None) -> None:
        self.checked += 1
        self.failed += 1
        if len(self.failures) < MAX_WITNESSES:
            self.failures.append({"witness": plain(witness), "lhs": plain(lhs), "rhs": plain(rhs)})

    def compare(self, witness, lhs, rhs) -> bool:
        if lhs == rhs:
            self.passed_case()
            return True
        self.fail(witness, lhs, rhs)
        return False

    @property
    def first_failure(self):
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "failed": self.failed,
            "failures": self.failures,
        }
        if self.notes:
            out["notes"] = plain(self.notes)
        return out

    def summary(self) -> str:
        line = f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.checked} checked, {self.failed} failed"
        if self.failures:
            w = self.failures[0]
            line += f"; first witness {w['witness']}: {w['lhs']} != {w['rhs']}"
        return line
