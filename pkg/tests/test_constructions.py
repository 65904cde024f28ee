import time

import pytest

from darbouxkit.errors import ConfigError

from darbouxkit.constructions import FIXTURE_IDS, TABLE3, list_fixtures, load_fixture, verify

LIMITS = {"quartic-d2": 10, "9.6": 30, "9.8": 30, "9.9": 30, "9.10": 30, "9.14": 30}


@pytest.mark.parametrize("fid", FIXTURE_IDS)
def test_fixture_verifies(fid):
    t0 = time.perf_counter()
    report = verify(fid, {"focal": False})
    assert time.perf_counter() - t0 < LIMITS[fid]
    failing = [c.name for c in report.checks if c.status not in ("pass", "skip")]
    assert failing == []
    assert report.status == "pass"


def test_six_curve_construction_numbers():
    r = verify("9.6", {"focal": False})
    assert r.check("deg_X").computed == 20
    assert r.check("delta").computed == 1
    assert r.check("dim_V").computed == 1


def test_two_stage_fixture_has_prefixed_checks():
    r = verify("9.10", {"focal": False})
    names = [c.name for c in r.checks]
    assert "core.deg_X" in names and "lifted.certificate" in names
    assert r.check("core.deg_X").computed == 7


def test_fixture_listing():
    rows = list_fixtures()
    assert [r["id"] for r in rows] == list(FIXTURE_IDS)
    assert len(rows) == 6
    by_id = {r["id"]: r for r in rows}
    assert by_id["9.14"]["table3"]["zoladek"] == "(CD_28)"
    assert by_id["quartic-d2"]["table3"] is None
    assert len(TABLE3) == 14


def test_unknown_fixture():
    with pytest.raises(ConfigError):
        load_fixture("9.99")


def test_focal_checks_on_a_fixture():
    r = verify("9.14")
    assert r.check("focal").status == "pass"
