"""Canonical JSON for reports: sorted keys, exact numbers, LF, trailing newline."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .poly import Poly


def exact(value: Any) -> Any:
    """Convert to JSON-safe exact data: rationals become "a/b" strings,
    field elements and polynomials become their printed form."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(value, dict):
        return {str(k): exact(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [exact(v) for v in value]
    if isinstance(value, Poly):
        return str(value)
    return str(value)


def dumps(data: Any) -> str:
    return json.dumps(exact(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write(path: str, data: Any) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(data))


PASS, FAIL, SKIP, INCONCLUSIVE = "pass", "fail", "skip", "inconclusive"


@dataclass
class Check:
    name: str
    expected: Any
    computed: Any
    status: str

    def to_dict(self) -> dict:
        return {"name": self.name, "expected": exact(self.expected), "computed": exact(self.computed), "status": self.status}


@dataclass
class VerificationReport:
    fixture: str
    environment: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "environment": exact(self.environment),
            "checks": [c.to_dict() for c in self.checks],
            "status": self.status,
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())
