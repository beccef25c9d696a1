"""Outcome records shared by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    counterexample: Any = None
    rows: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self, with_rows: bool = True) -> dict:
        out = {"name": self.name, "status": self.status, "counterexample": self.counterexample}
        if with_rows:
            out["rows"] = self.rows
        return out


def first_failure(name: str, rows: list[dict], ok_key: str = "ok", where=("charge2", "weight4")) -> Check:
    """Collapse per-cell rows into a Check naming the first failing cell."""
    for row in rows:
        if not row[ok_key]:
            return Check(name, False, {k: row[k] for k in where if k in row}, rows)
    return Check(name, True, None, rows)
