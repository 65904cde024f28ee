"""Bundled configurations and their end-to-end verification.

Each fixture is a JSON file with one or more stages; a stage is an analysis
config (see :mod:`darbouxkit.config`) plus the expected values.  Checks run
in a fixed order:

    integral curves, square-freeness, deg X and linkage, local invariants,
    delta and dim V, dimension formula, eta rows, certificate, genericity,
    rigidity, focal values and the focal Jacobian.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Any, Callable

from . import darboux as dx
from . import eta as et
from . import focal as fc
from . import local as lc
from .config import TOP_KEYS, AnalysisConfig, parse_affine, parse_point, parse_value
from .errors import ConfigError, DarbouxError, InconclusiveError
from .fields import field_from_spec
from .poly import poly_product
from .report import FAIL, INCONCLUSIVE, PASS, SKIP, Check, VerificationReport

FIXTURE_IDS = ("quartic-d2", "9.6", "9.8", "9.9", "9.10", "9.14")
STAGE_KEYS = TOP_KEYS | {"name", "expected", "curves_provenance"}

# Steiner's experimental ideals in codimension 9, the Zoladek families they
# contain, and whether a construction is bundled here.
TABLE3 = (
    ("9.1", "CR_9", ""),
    ("9.2", "CD_8", ""),
    ("9.3", "", ""),
    ("9.4", "CR_15", ""),
    ("9.5", "CD_21, CR_10", ""),
    ("9.6", "", "Construction"),
    ("9.7", "", ""),
    ("9.8", "", "Construction"),
    ("9.9", "", "Construction"),
    ("9.10", "", "Construction"),
    ("9.11", "(CD_30)", ""),
    ("9.12", "", ""),
    ("9.13", "", ""),
    ("9.14", "(CD_28)", "Construction"),
)


@lru_cache(maxsize=None)
def _raw(fixture_id: str) -> str:
    if fixture_id not in FIXTURE_IDS:
        raise ConfigError(f"unknown fixture {fixture_id!r}; known: {', '.join(FIXTURE_IDS)}")
    return resources.files("darbouxkit.fixtures").joinpath(f"{fixture_id}.json").read_text(encoding="utf-8")


def load_fixture(fixture_id: str) -> dict:
    return json.loads(_raw(fixture_id))


def list_fixtures() -> list[dict]:
    out = []
    for fid in FIXTURE_IDS:
        fx = load_fixture(fid)
        out.append(
            {
                "id": fid,
                "title": fx["title"],
                "table3": fx["table3"],
                "stages": [s["name"] for s in fx["stages"]],
            }
        )
    return out


def stage_config(stage: dict) -> AnalysisConfig:
    extra = sorted(set(stage) - STAGE_KEYS)
    if extra:
        raise ConfigError(f"unknown key(s) in stage: {', '.join(extra)}")
    return AnalysisConfig.from_dict({k: v for k, v in stage.items() if k in TOP_KEYS})


# ---------------------------------------------------------------------------
# the pipeline
# ---------------------------------------------------------------------------


class _Runner:
    def __init__(self, prefix: str):
        self.prefix = prefix
        self.checks: list[Check] = []

    def run(self, name: str, expected: Any, compute: Callable[[], Any], ok: Callable[[Any], bool] | None = None):
        """Record one check; ``ok`` decides the status (default: equality with
        ``expected``, or plain success when nothing is expected)."""
        full = f"{self.prefix}{name}"
        try:
            value = compute()
        except InconclusiveError as exc:
            self.checks.append(Check(full, expected, f"{type(exc).__name__}: {exc}", INCONCLUSIVE))
            return None
        except DarbouxError as exc:
            self.checks.append(Check(full, expected, f"{type(exc).__name__}: {exc}", FAIL))
            return None
        if ok is not None:
            good = ok(value)
        elif expected is None:
            good = True
        else:
            good = value == expected
        self.checks.append(Check(full, expected, value, PASS if good else FAIL))
        return value

    def skip(self, name: str, why: str):
        self.checks.append(Check(f"{self.prefix}{name}", None, why, SKIP))


def analyze(cfg: AnalysisConfig, expected: dict | None = None, prefix: str = "", environment: dict | None = None) -> list[Check]:
    """Run the selected checks of a config; compare against ``expected`` where given."""
    exp = expected or {}
    env = environment or {}
    R = _Runner(prefix)
    F = cfg.field
    omega = cfg.form
    want = set(cfg.checks)
    names = list(cfg.curves)
    groups = cfg.groups or {n: [n] for n in names}
    group_polys = [poly_product([cfg.curves[n] for n in members], F) for members in groups.values()]
    U = poly_product([cfg.curves[n] for n in names], F)
    d = cfg.degree
    e = U.degree

    # (a) integral curves
    if "integral" in want and omega is not None:
        for n in names:
            R.run(f"integral.{n}", True, lambda n=n: dx.is_integral_curve(cfg.curves[n], omega) is not None)
        for g, members in groups.items():
            if len(members) > 1:
                R.run(f"integral.{g}", True, lambda m=members: dx.union_integral_curve_check([cfg.curves[n] for n in m], omega))

    # (b) square-free, no component at infinity
    if "square_free" in want:
        R.run("square_free", True, lambda: dx.is_square_free(U))
        R.run("no_component_at_infinity", True, lambda: not dx.has_component_at_infinity(U))

    # (c) deg X and linkage
    degx = None
    if "deg_X" in want or "kernel" in want or "local" in want:
        lk = R.run("deg_X", exp.get("deg_X"), lambda: dx.deg_X(U).deg_X)
        if lk is not None:
            degx = lk
            L = dx.deg_X(U)
            R.run("linkage", (e - 1) ** 2, lambda: L.deg_X + L.deg_Y)

    # (d) local invariants at marked points
    if "local" in want and cfg.points:
        total = 0
        complete = True
        for obj in cfg.points:
            mp, PF = parse_point(obj, F)
            label = mp.label or str(obj["coords"])
            key = "t_z" if mp.at_infinity(PF) else "t"
            target = obj.get(key)

            def compute(mp=mp, PF=PF):
                inv = lc.invariants_at(U if PF == F else U.map_field(PF), mp)
                out = {"milnor": inv.milnor, "tjurina": inv.tjurina}
                if inv.t_z is None:
                    out["t"] = inv.tjurina
                else:
                    out["t_z"] = inv.t_z
                    out["intersection_with_line"] = inv.intersection_with_line
                return out

            def ok(v, mp=mp, PF=PF, key=key, target=target):
                good = target is None or v.get(key) == target
                if mp.declared_type and not mp.at_infinity(PF):
                    good = good and v["milnor"] == v["tjurina"] == lc.type_tjurina(mp.declared_type)
                return good

            v = R.run(f"local.{label}", {key: target, "declared_type": mp.declared_type}, compute, ok)
            if v is None:
                complete = False
            else:
                total += v.get("t_z", v["tjurina"])
        if complete and degx is not None:
            # only a claim when the marked points are declared to exhaust X
            if exp or cfg.options.get("points_complete"):
                R.run("local.sum", degx, lambda: total)
            else:
                R.run("local.sum", None, lambda: total)

    # (e), (f) delta, dim V and the dimension formula
    if "kernel" in want:
        if degx is not None:
            R.run("delta", exp.get("delta"), lambda: dx.expected_dimension(d, e, degx))
        R.run("dim_V", exp.get("dim_V"), lambda: dx.kernel_space(U, d).dim)
    if "dimension_formula" in want:
        R.run("dimension_formula", True, lambda: dx.dimension_formula_check(U, d)[1], lambda v: v["dim_V"] == v["hamiltonian"] + v["cofactor_slice"])

    labels = {}
    for obj in cfg.points:
        mp, PF = parse_point(obj, F)
        if PF == F:
            labels[mp.label] = mp

    # (g) eta rows
    if "eta" in want and omega is not None:
        for row in exp.get("eta_rows", []):
            target = et.RatioVector(row["row"])
            for lab in row["points"]:
                R.run(
                    f"eta.{lab}",
                    row["row"],
                    lambda lab=lab: et.eta_at_point(omega, group_polys, labels[lab]),
                    lambda v, target=target: v.degenerate or v.matches(target),
                )
        if "eta_infinity" in exp:
            ei = exp["eta_infinity"]

            def inf():
                r = et.eta_at_infinity(omega, group_polys)
                return {
                    "points": r.k,
                    "predicted": str(r.predicted),
                    "evaluations": [[str(tuple(str(c) for c in p)), str(v)] for p, v in r.evaluations],
                    "all_match": r.all_match,
                    "_predicted": r.predicted,
                }

            v = R.run(
                "eta.infinity",
                ei,
                inf,
                lambda v: v["points"] == ei["points"] and v["_predicted"] == et.RatioVector(ei["row"]) and v["all_match"],
            )
            if v is not None:
                v.pop("_predicted")

    # (h) certificate
    if "certificate" in want and omega is not None:
        found = {}

        def cert():
            c = et.certificate_search(omega, group_polys)
            if c is None:
                return None
            found["c"] = c
            return {
                "integer_form": list(c.integer_form) if c.integer_form else None,
                "alphas": list(c.alphas),
                "alpha0": c.alpha0,
                "kind": c.kind,
                "holds": c.holds,
            }

        R.run(
            "certificate",
            exp.get("certificate"),
            cert,
            lambda v: v is not None and v["holds"] and ("certificate" not in exp or v["integer_form"] == exp["certificate"]),
        )
        if "c" in found:
            R.run("certificate.resubstitution", 0, lambda: len(et.cleared_identity_residual(omega, group_polys, found["c"]).terms))

    # (i) genericity of special points
    for i, g in enumerate(exp.get("genericity", [])):
        R.run(
            f"genericity.{i + 1}",
            True,
            lambda g=g: dx.genericity_points_condition([labels[l].coords for l in g["points"]], g["degree"], F),
        )

    # (j) rigidity
    if omega is not None:
        for r in exp.get("rigidity", []):
            R.run(f"rigidity.{r['curve']}", r["value"], lambda r=r: dx.curve_rigidity(omega, cfg.curves[r["curve"]]))

    # (k) focal values and Jacobian
    if "focal" in want and omega is not None:
        fspec = exp.get("focal") or cfg.options.get("focal_point")
        if not env.get("focal", True):
            R.skip("focal", "disabled in the environment")
        elif fspec is None:
            _focal_search(R, omega, cfg.options.get("prime", env.get("prime", cfg.prime)), cfg.options.get("focal_order", env.get("focal_order", 10)), env.get("gauge", "x"))
        else:
            jspec = exp.get("jacobian")
            if jspec is None and "ambient" in cfg.options:
                jspec = {"directions": cfg.options["ambient"]}
            _focal(R, omega, fspec, jspec, env, cfg)
    return R.checks


def _zero(seq) -> bool:
    return not any(seq.s)


def _focal_search(R: _Runner, omega, prime: int, N: int, gauge: str):
    def run():
        return [
            {"point": [str(c) for c in r.point], "field": str(r.field), "s": [str(s) for s in r.sequence.s], "zero": _zero(r.sequence)}
            for r in fc.focal_at_prime(omega, prime, N, gauge)
        ]

    R.run("focal", "all zero at every center candidate", run, lambda v: bool(v) and all(r["zero"] for r in v))


def _focal(R: _Runner, omega, fspec: dict, jspec: dict | None, env: dict, cfg: AnalysisConfig):
    N = env.get("focal_order", fspec.get("N", 10))
    gauge = env.get("gauge", "x")
    prime = env.get("prime")
    recorded = field_from_spec(fspec["field"])
    if prime is not None and prime != recorded.characteristic:
        # the recorded point belongs to another prime: search afresh
        _focal_search(R, omega, prime, N, gauge)
        if jspec:
            R.skip("focal.jacobian", "rank recorded for another prime")
        return
    F = recorded
    pt = tuple(parse_value(v, F) for v in fspec["point"])
    state = {}

    def values():
        nf = fc.normalize_at(omega.map_field(F), pt)
        seq = fc.focal_values(nf, N, gauge)
        state["nf"] = nf
        return {
            "field": str(F),
            "N": N,
            "c": str(nf.c),
            "s": [str(s) for s in seq.s],
            "convention": seq.convention_tag,
            "identity_residual_terms": len(fc.identity_residual(nf, seq).terms),
            "_zero": _zero(seq),
        }

    v = R.run("focal", {"field": fspec["field"], "N": N, "s": "all zero"}, values, lambda v: v["_zero"] and v["identity_residual_terms"] == 0)
    if v is not None:
        v.pop("_zero")
    if jspec and "nf" in state:
        if not env.get("jacobian", True):
            R.skip("focal.jacobian", "disabled in the environment")
            return

        dirs = None
        if isinstance(jspec.get("directions"), list):
            dirs = [(parse_affine(p, field=F), parse_affine(q, field=F)) for p, q in jspec["directions"]]

        def jac():
            J = fc.focal_jacobian(state["nf"], jspec.get("N", N), dirs)
            return {"M": J.ambient_dim, "rank": J.rank, "tangent_dim": J.tangent_dim}

        if "rank" in jspec:
            R.run(
                "focal.jacobian",
                {"M": jspec["M"], "rank": jspec["rank"], "tangent_dim_at_most": 9},
                jac,
                lambda v: v["M"] == jspec["M"] and v["rank"] == jspec["rank"] and v["tangent_dim"] <= 9,
            )
        else:
            R.run("focal.jacobian", None, jac)


DEFAULT_ENVIRONMENT = {"field": "Q", "prime": 10007, "focal": True, "jacobian": True, "gauge": "x"}


def verify(fixture_id: str, environment: dict | None = None) -> VerificationReport:
    """Run every check of a bundled fixture; failures are recorded, not raised."""
    env = dict(DEFAULT_ENVIRONMENT)
    env.update(environment or {})
    fx = load_fixture(fixture_id)
    env_report = {k: env[k] for k in sorted(env)}
    env_report["conventions"] = {
        "certificate": "sum alpha_i K_i + alpha_0 dw = 0, integer form primitive with first nonzero entry positive",
        "focal_gauge": fc.GAUGE_X if env.get("gauge", "x") == "x" else fc.GAUGE_Y,
        "focal_ambient": "monomials of degree 2..d added to p and to q",
    }
    report = VerificationReport(fixture_id, env_report)
    multi = len(fx["stages"]) > 1
    for stage in fx["stages"]:
        cfg = stage_config(stage)
        prefix = f"{stage['name']}." if multi else ""
        report.checks.extend(analyze(cfg, stage.get("expected", {}), prefix, env))
    return report
