"""One check per acceptance criterion, with exact comparisons and wall-clock limits.

Run with pytest (a summary section lists every criterion) or directly:
``python tests/test_acceptance.py``.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from darbouxkit import GF, DifferentialForm, parse_polynomial  # noqa: E402
from darbouxkit import eta as et  # noqa: E402
from darbouxkit import focal as fc  # noqa: E402
from darbouxkit import local as lc  # noqa: E402
from darbouxkit.config import parse_value  # noqa: E402
from darbouxkit.constructions import FIXTURE_IDS, load_fixture, stage_config, verify  # noqa: E402
from darbouxkit.errors import HypothesisViolated  # noqa: E402
from darbouxkit.fields import field_from_spec  # noqa: E402
from darbouxkit.report import exact  # noqa: E402

RESULTS: dict[int, str] = {}
P = parse_polynomial
PRIME = 10007


def record(n, title, limit, fn):
    t0 = time.perf_counter()
    failures = fn()
    dt = time.perf_counter() - t0
    ok = not failures and dt < limit
    detail = "; ".join(failures) if failures else f"limit {limit:g}s"
    RESULTS[n] = f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}: {dt:.2f}s ({detail})"
    assert not failures, failures
    assert dt < limit, f"{dt:.2f}s exceeds {limit}s"


def expect(failures, label, computed, expected):
    if computed != expected:
        failures.append(f"{label}: {computed!r} != {expected!r}")


def checks(report):
    return {c.name: c for c in report.checks}


# 1 ----------------------------------------------------------------------------


def criterion_eta_tables():
    from test_eta import PAIRS, SINGLE, _wdeg, pair_form, single_form

    bad = []
    for germ, w, wdeg, row in SINGLE:
        pred = et.predicted_eta_single(w, wdeg)
        expect(bad, f"predicted {germ}", pred.normalized(), et.RatioVector(row).normalized())
        C = P(germ)
        expect(bad, f"evaluated {germ}", str(et.eta_at_point(single_form(C, *w), [C], (0, 0))), str(pred))
    for c, d, w, row in PAIRS:
        C, D = P(c), P(d)
        pred = et.predicted_eta_pair(_wdeg(C, *w), _wdeg(D, *w), *w)
        expect(bad, f"predicted {c}|{d}", pred.normalized(), et.RatioVector(row).normalized())
        expect(bad, f"evaluated {c}|{d}", str(et.eta_at_point(pair_form(C, D, *w), [C, D], (0, 0))), str(pred))
    try:
        et.predicted_eta_pair(1, 1, 1, 1)
        bad.append("node pair did not report missing information")
    except HypothesisViolated:
        pass
    return bad


def test_criterion_01_eta_tables():
    record(1, "eta tables (single and pair)", 1.0, criterion_eta_tables)


# 2 ----------------------------------------------------------------------------


def criterion_tz_table():
    bad = []
    for germ, tz in [("x+y", 0), ("y-x^2", 1), ("x^2-y^2", 2), ("(y-x^2)*(y+x)", 3), ("x^3-y^3", 6)]:
        F = P(germ)
        got = lc.modified_tjurina(F)
        expect(bad, germ, got, tz)
        expect(bad, f"{germ} t+i-1", lc.tjurina(F) + lc.intersection_multiplicity_with_line(F) - 1, got)
    return bad


def test_criterion_02_modified_tjurina():
    record(2, "modified Tjurina table and t_z = t + i - 1", 1.0, criterion_tz_table)


# 3-8 --------------------------------------------------------------------------


def _construction(fid, wanted):
    def run():
        c = checks(verify(fid, {"focal": False}))
        bad = []
        for name, value in wanted.items():
            if name not in c:
                bad.append(f"missing check {name}")
                continue
            expect(bad, name, exact(c[name].computed), value)
            if c[name].status != "pass":
                bad.append(f"{name} status {c[name].status}")
        return bad

    return run



def test_criterion_03_six_curves():
    def run():
        bad = _construction("9.6", {"deg_X": 20, "delta": 1, "dim_V": 1, "genericity.1": True, "rigidity.Q": 1})()
        c = checks(verify("9.6", {"focal": False}))
        expect(bad, "certificate", c["certificate"].computed["integer_form"], [1, -1, 1])
        expect(bad, "resubstitution", c["certificate.resubstitution"].computed, 0)
        return bad

    record(3, "9.6 deg_X 20, delta 1, dim V 1, (1,-1|1), conic genericity, rigidity 1", 30, run)


def test_criterion_04_three_cusps_and_tangent():
    def run():
        want = {"deg_X": 11, "delta": 1, "genericity.1": True}
        want.update({f"eta.{p}": "0:6:5" for p in "RST"})
        want["eta.B"] = "2:2:3"
        bad = _construction("9.8", want)()
        c = checks(verify("9.8", {"focal": False}))
        expect(bad, "eta.infinity", c["eta.infinity"].computed["predicted"], "1:4:4")
        expect(bad, "eta.infinity all match", c["eta.infinity"].computed["all_match"], True)
        expect(bad, "certificate", c["certificate"].computed["integer_form"], [4, 5, -6])
        expect(bad, "resubstitution", c["certificate.resubstitution"].computed, 0)
        return bad

    record(4, "9.8 deg_X 11, delta 1, eta rows, 4K_L + 5K_C - 6dw = 0, R S T B not collinear", 30, run)


def test_criterion_05_conic_and_triangle():
    def run():
        bad = _construction("9.9", {"deg_X": 13, "delta": 3, "dim_V": 3, "genericity.1": True})()
        c = checks(verify("9.9", {"focal": False}))
        expect(bad, "certificate", c["certificate"].computed["integer_form"], [1, 2, -2])
        expect(bad, "resubstitution", c["certificate.resubstitution"].computed, 0)
        return bad

    record(5, "9.9 deg_X 13, delta 3, dim V 3, K_Q + 2K_T - 2dw = 0, six points off a conic", 30, run)


def test_criterion_06_core_and_lift():
    def run():
        want = {"core.deg_X": 7, "core.delta": 1, "core.genericity.1": True}
        want.update({f"core.eta.{p}": "6:5" for p in "RST"})
        bad = _construction("9.10", want)()
        c = checks(verify("9.10", {"focal": False}))
        expect(bad, "core certificate", c["core.certificate"].computed["integer_form"], [5, -6])
        expect(bad, "lifted certificate", c["lifted.certificate"].computed["integer_form"], [5, 6, -6])
        expect(bad, "lifted resubstitution", c["lifted.certificate.resubstitution"].computed, 0)
        return bad

    record(6, "9.10 core deg_X 7, delta 1, cusps 6:5, 5K - 6dw = 0; (x+1)w certified", 30, run)


def test_criterion_07_two_conics_and_line():
    def run():
        bad = _construction("9.14", {"deg_X": 11, "delta": 1, "genericity.1": True})()
        c = checks(verify("9.14", {"focal": False}))
        expect(bad, "certificate", c["certificate"].computed["integer_form"], [1, -1])
        expect(bad, "resubstitution", c["certificate.resubstitution"].computed, 0)
        return bad

    record(7, "9.14 deg_X 11, delta 1, K_U - dw = 0, nodes off a conic", 30, run)


def test_criterion_08_quartic_degree_two():
    record(8, "3-cuspidal quartic: deg_X 7, dim V_C(2) = 1 = delta", 10, _construction("quartic-d2", {"deg_X": 7, "dim_V": 1, "delta": 1}))


# 9 ----------------------------------------------------------------------------


def _recorded_centers():
    for fid in FIXTURE_IDS:
        for st in load_fixture(fid)["stages"]:
            spec = st.get("expected", {}).get("focal")
            if spec:
                yield f"{fid}/{st['name']}", stage_config(st), spec


def criterion_focal():
    bad = []
    F = GF(PRIME)
    x, y = P("x", F), P("y", F)
    for h in ("x^3+x*y^2", "3*x^2*y-y^3+x^4", "x*y^3+2*x^3*y-y^4"):
        H = (x * x + y * y).scale(F(1) / F(2)) + P(h, F)
        seq = fc.focal_values(DifferentialForm(H.diff("x"), H.diff("y"), H.degree), 10)
        expect(bad, f"hamiltonian {h}", seq.all_zero, True)
    for label, cfg, spec in _recorded_centers():
        K = field_from_spec(spec["field"])
        pt = tuple(parse_value(v, K) for v in spec["point"])
        seq = fc.focal_values(fc.normalize_at(cfg.form.map_field(K), pt), 10)
        expect(bad, f"{label} s_1..s_10", (len(seq.s), seq.all_zero), (10, True))
    s = fc.focal_values(DifferentialForm(P("x+x^2*y", F), P("y", F), 3), 3).s
    if not s[0]:
        bad.append("perturbation x^2*y has s_1 = 0")
    return bad


def test_criterion_09_focal_values():
    record(9, "focal values: Hamiltonian zero, fixtures zero at p = 10007, perturbation s_1 != 0", 120, criterion_focal)


# 10 ---------------------------------------------------------------------------


def criterion_tangent():
    st = load_fixture("9.6")["stages"][0]
    spec, jspec = st["expected"]["focal"], st["expected"]["jacobian"]
    K = field_from_spec(spec["field"])
    pt = tuple(parse_value(v, K) for v in spec["point"])
    nf = fc.normalize_at(stage_config(st).form.map_field(K), pt)
    J = fc.focal_jacobian(nf, jspec["N"])
    bad = []
    expect(bad, "ambient M", J.ambient_dim, jspec["M"])
    expect(bad, "rank", J.rank, jspec["rank"])
    if not J.tangent_dim <= 9:
        bad.append(f"tangent dimension {J.tangent_dim} > 9")
    return bad


def test_criterion_10_tangent_space():
    record(10, "9.6 focal Jacobian: recorded rank 9 of M = 14, tangent dim <= 9", 300, criterion_tangent)


# 11 ---------------------------------------------------------------------------


def criterion_properties():
    import test_properties as tp

    bad = []
    suites = [
        tp.test_euler_relation,
        tp.test_weighted_euler_relation,
        tp.test_linkage_and_dimension_formula_on_random_curves,
        tp.test_certificate_resubstitution_on_kernel_combinations,
        tp.test_certificate_survives_scaling,
        tp.test_gauge_does_not_change_the_vanishing_pattern_start,
        tp.test_hamiltonian_normal_forms_have_zero_focal_values_in_both_gauges,
    ]
    for fn in suites:
        try:
            fn()
        except AssertionError as exc:
            bad.append(f"{fn.__name__}: {exc}")
    for fid in FIXTURE_IDS:
        try:
            tp.test_local_sum_matches_linkage_on_fixtures(fid)
        except AssertionError as exc:
            bad.append(f"local sum {fid}: {exc}")
    return bad


def test_criterion_11_property_suites():
    record(11, "property suites (Euler, linkage, dimension formula, local sums, certificates, gauge)", 120, criterion_properties)


if __name__ == "__main__":
    tests = sorted(name for name in dir() if name.startswith("test_criterion_"))
    for name in tests:
        try:
            globals()[name]()
        except AssertionError:
            pass
    for n in sorted(RESULTS):
        print(RESULTS[n])
    sys.exit(0 if all(line.startswith("[PASS]") for line in RESULTS.values()) else 1)
