import json
from fractions import Fraction

import pytest

from darbouxkit import QQ, parse_polynomial
from darbouxkit.config import AnalysisConfig, parse_affine, parse_point, substitute
from darbouxkit.constructions import verify
from darbouxkit.errors import ConfigError
from darbouxkit.report import Check, VerificationReport, dumps, exact


BASE = {
    "field": "Q",
    "degree": 2,
    "curves": {"C": "y-x^2"},
    "form": {"P": "-2*y", "Q": "x"},
}


def test_minimal_config():
    cfg = AnalysisConfig.from_dict(BASE)
    assert cfg.degree == 2 and cfg.field == QQ
    assert cfg.curves["C"] == parse_polynomial("y-x^2")


@pytest.mark.parametrize(
    "patch",
    [
        {"colour": "red"},
        {"form": {"P": "x", "Q": "y", "R": "0"}},
        {"options": {"verbose": True}},
        {"points": [{"coords": [0, 0], "weight": 2}]},
        {"checks": ["integral", "telepathy"]},
        {"curves": {}},
        {"prime": "large"},
        {"field": "R"},
    ],
)
def test_bad_configs_rejected(patch):
    with pytest.raises(ConfigError):
        AnalysisConfig.from_dict({**BASE, **patch})


def test_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        AnalysisConfig.load(str(tmp_path / "nope.json"))


def test_projective_strings_are_dehomogenized():
    assert parse_affine("x^2+y^2-z^2") == parse_polynomial("x^2+y^2-1")
    assert substitute("2*w+ww", {"w": "x+1"}) == "2*(x+1)+ww"


def test_point_coordinates_are_exact():
    mp, F = parse_point({"label": "A", "coords": ["-1/2", 3]})
    assert mp.coords == (Fraction(-1, 2), 3) and F == QQ
    mp, F = parse_point({"coords": [1, 0, 0], "field": "GF(101)"})
    assert F.characteristic == 101


def test_exact_serialization():
    assert exact(Fraction(3, 4)) == "3/4"
    assert exact(Fraction(4, 2)) == 2
    with pytest.raises(TypeError):
        exact(0.5)
    text = dumps({"b": 1, "a": [Fraction(-1, 3)]})
    assert text.endswith("\n") and "\r" not in text
    assert list(json.loads(text)) == ["a", "b"]


def test_report_status_precedence():
    r = VerificationReport("x", {}, [Check("a", 1, 1, "pass"), Check("b", 1, None, "inconclusive")])
    assert r.status == "inconclusive"
    r.checks.append(Check("c", 1, 2, "fail"))
    assert r.status == "fail"
    assert r.check("a").computed == 1
    assert set(r.to_dict()) == {"fixture", "environment", "checks", "status"}


def _floats(obj):
    if isinstance(obj, float):
        return True
    if isinstance(obj, dict):
        return any(_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_floats(v) for v in obj)
    return False


def test_reports_are_byte_identical_across_runs():
    env = {"focal": False}
    a = verify("9.14", env).to_json()
    b = verify("9.14", env).to_json()
    assert a == b
    assert not _floats(json.loads(a))
