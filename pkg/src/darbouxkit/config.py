"""Strict JSON job descriptions shared by ``analyze`` and the bundled fixtures."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import ConfigError
from .fields import QQ, Field, field_from_spec
from .local import MarkedPoint
from .parsing import parse_polynomial
from .poly import DifferentialForm, Poly

TOP_KEYS = {"field", "prime", "degree", "curves", "form", "points", "checks", "options", "definitions", "groups"}
FORM_KEYS = {"P", "Q", "d"}
POINT_KEYS = {"label", "coords", "chart", "declared_type", "t", "t_z", "field", "provenance"}
OPTION_KEYS = {"prime", "focal_order", "focal_point", "gauge", "points_complete", "ambient"}
CHECKS = (
    "integral",
    "square_free",
    "deg_X",
    "local",
    "kernel",
    "dimension_formula",
    "eta",
    "certificate",
    "focal",
)


def _reject_unknown(obj: dict, allowed: set, where: str):
    if not isinstance(obj, dict):
        raise ConfigError(f"{where} must be an object")
    extra = sorted(set(obj) - allowed)
    if extra:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(extra)}")


def substitute(text: str, definitions: dict[str, str]) -> str:
    """Replace whole-word names by their parenthesized definitions."""
    for name, body in definitions.items():
        text = re.sub(rf"\b{re.escape(name)}\b", f"({body})", text)
    return text


def parse_affine(text: str, definitions: dict[str, str] | None = None, field: Field = QQ) -> Poly:
    """Parse a curve or coefficient; text mentioning z is read projectively
    and then restricted to z = 1."""
    src = substitute(text, definitions or {})
    p = parse_polynomial(src, field)
    return p.affine("z") if p.nvars == 3 else p


def parse_value(v, F: Field):
    if isinstance(v, bool):
        raise ConfigError("booleans are not coordinates")
    if isinstance(v, int):
        return F(v)
    if isinstance(v, str):
        try:
            q = Fraction(v)
        except ValueError as exc:
            raise ConfigError(f"bad coordinate {v!r}") from exc
        return F.from_fraction(q)
    raise ConfigError(f"bad coordinate {v!r}")


def parse_point(obj: dict, F: Field = QQ) -> tuple[MarkedPoint, Field]:
    _reject_unknown(obj, POINT_KEYS, "point")
    if "coords" not in obj:
        raise ConfigError("point without coords")
    PF = field_from_spec(obj["field"]) if "field" in obj else F
    coords = tuple(parse_value(v, PF) for v in obj["coords"])
    if len(coords) not in (2, 3):
        raise ConfigError("points have 2 affine or 3 projective coordinates")
    mp = MarkedPoint(coords, obj.get("label", ""), obj.get("declared_type"), obj.get("chart"))
    return mp, PF


@dataclass
class AnalysisConfig:
    field: Field
    prime: int
    degree: int
    curves: dict[str, Poly]
    form: DifferentialForm | None = None
    points: list[dict] = field(default_factory=list)
    checks: tuple[str, ...] = CHECKS
    options: dict[str, Any] = field(default_factory=dict)
    groups: dict[str, list[str]] | None = None
    definitions: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> AnalysisConfig:
        _reject_unknown(data, TOP_KEYS, "config")
        prime = data.get("prime", 10007)
        if not isinstance(prime, int) or isinstance(prime, bool):
            raise ConfigError("prime must be an integer")
        try:
            F = field_from_spec(data.get("field", "Q"), prime)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        defs = data.get("definitions", {})
        if not isinstance(defs, dict) or not all(isinstance(v, str) for v in defs.values()):
            raise ConfigError("definitions map names to strings")
        curves_raw = data.get("curves")
        if not isinstance(curves_raw, dict) or not curves_raw:
            raise ConfigError("curves must be a nonempty object name -> polynomial")
        curves = {name: parse_affine(text, defs, F) for name, text in curves_raw.items()}
        form = None
        if "form" in data:
            f = data["form"]
            _reject_unknown(f, FORM_KEYS, "form")
            if "P" not in f or "Q" not in f:
                raise ConfigError("form needs P and Q")
            P, Q = parse_affine(f["P"], defs, F), parse_affine(f["Q"], defs, F)
            d = f.get("d", data.get("degree"))
            form = DifferentialForm(P, Q, d) if d is not None else DifferentialForm(P, Q, max(P.degree or 0, Q.degree or 0))
        degree = data.get("degree", form.degree if form else None)
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise ConfigError("degree must be an integer")
        points = data.get("points", [])
        if not isinstance(points, list):
            raise ConfigError("points must be an array")
        for p in points:
            parse_point(p, F)
        checks = data.get("checks", list(CHECKS))
        bad = [c for c in checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown check(s): {', '.join(bad)}")
        options = data.get("options", {})
        _reject_unknown(options, OPTION_KEYS, "options")
        groups = data.get("groups")
        if groups is not None:
            if not isinstance(groups, dict) or any(n not in curves for g in groups.values() for n in g):
                raise ConfigError("groups map names to lists of curve names")
        return cls(F, prime, degree, curves, form, points, tuple(checks), options, groups, defs)

    @classmethod
    def load(cls, path: str) -> AnalysisConfig:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        return cls.from_dict(data)
