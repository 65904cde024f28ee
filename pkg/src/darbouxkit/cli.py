"""Command-line interface.

Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 bad input or
usage, 3 inconclusive (no stabilization, missing square root, ...).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from . import darboux as dx
from . import eta as et
from . import focal as fc
from . import local as lc
from .config import AnalysisConfig, parse_affine
from .constructions import FIXTURE_IDS, TABLE3, analyze, list_fixtures, verify
from .errors import ArityMismatch, ConfigError, DarbouxError, DegreeTooSmall, InconclusiveError, PolySyntaxError
from .fields import QQ, Field, field_from_spec
from .poly import DifferentialForm, poly_product
from .report import FAIL, INCONCLUSIVE, PASS, Check, VerificationReport, dumps, write

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _globals(p: argparse.ArgumentParser, top: bool):
    d = None if top else argparse.SUPPRESS
    p.add_argument("--field", default=d, help="Q, Fp, Fp^k or GF(p^k) (default Q)")
    p.add_argument("--prime", type=int, default=d, help="prime for Fp fields and focal runs (default 10007)")
    p.add_argument("--json", metavar="PATH", default=d, help="write a canonical JSON report")
    p.add_argument("--quiet", action="store_true", default=False if top else argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="darbouxkit", description="Exact Darboux integrability checks for planar polynomial forms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _globals(parser, True)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help):
        s = sub.add_parser(name, help=help)
        _globals(s, False)
        return s

    def form_args(s, required=True):
        s.add_argument("--P", required=required, help="dx coefficient")
        s.add_argument("--Q", required=required, help="dy coefficient")
        s.add_argument("--degree", type=int, help="degree d of the form (default: max degree of P, Q)")

    s = add("analyze", "run the checks listed in a JSON config")
    s.add_argument("config")

    s = add("cofactor", "cofactor of an integral curve")
    form_args(s)
    s.add_argument("--curve", required=True)

    s = add("kernel", "dimension of V_C(d)")
    s.add_argument("--curve", required=True, action="append")
    s.add_argument("--degree", type=int, required=True)

    s = add("degx", "deg X = deg V(C, C_x, C_y) and the linked degree")
    s.add_argument("--curve", required=True, action="append")

    s = add("tjurina", "Milnor and Tjurina numbers at a point")
    s.add_argument("--poly", required=True)
    s.add_argument("--point", default="0,0", help="x,y or X:Y:Z")

    s = add("tz", "modified Tjurina number at a point of z = 0")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--germ", help="local germ in (x, y) with y = 0 the line at infinity")
    g.add_argument("--curve", help="affine curve; requires --point X:Y:0")
    s.add_argument("--point")

    s = add("eta", "eta ratio at a point, or the predicted ratio of a singularity type")
    form_args(s, required=False)
    s.add_argument("--curve", action="append")
    s.add_argument("--point")
    s.add_argument("--type", help="A_n, D_n, E6, E7, E8, node, cusp, tacnode, triple, 4-fold")

    s = add("certify", "search an exact relation sum a_i K_i + a_0 dw = 0")
    form_args(s)
    s.add_argument("--curve", required=True, action="append")

    s = add("focal", "focal values at the center candidates over GF(p) (or at --point)")
    form_args(s)
    s.add_argument("--point", help="x,y; coordinates in --field")
    s.add_argument("--order", type=int, default=10)
    s.add_argument("--gauge", choices=("x", "y"), default="x")

    s = add("tangent-rank", "rank of the focal-value Jacobian in the default ambient")
    form_args(s, required=False)
    s.add_argument("--point", help="x,y; coordinates in --field")
    s.add_argument("--order", type=int, default=10)
    s.add_argument("--fixture", default=None, help="use a bundled fixture's form and recorded point")

    s = add("verify-construction", "verify a bundled construction")
    s.add_argument("id", choices=FIXTURE_IDS)
    s.add_argument("--no-focal", action="store_true", help="skip focal values and the Jacobian")

    add("list-constructions", "list bundled constructions and the overview table")
    return parser


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _field(args) -> Field:
    spec = getattr(args, "field", None) or "Q"
    try:
        return field_from_spec(spec, getattr(args, "prime", None) or 10007)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _point(text: str, F: Field) -> tuple:
    sep = ":" if ":" in text else ","
    try:
        vals = [Fraction(v.strip()) for v in text.split(sep)]
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}") from exc
    if len(vals) not in (2, 3) or (sep == ":") != (len(vals) == 3):
        raise UsageError("points are x,y or X:Y:Z")
    return tuple(F.from_fraction(v) for v in vals)


def _form(args, F: Field) -> DifferentialForm:
    if not args.P or not args.Q:
        raise UsageError("--P and --Q are required")
    P, Q = parse_affine(args.P, field=F), parse_affine(args.Q, field=F)
    d = args.degree if args.degree is not None else max(P.degree or 0, Q.degree or 0)
    return DifferentialForm(P, Q, d)


def _curves(texts: Sequence[str], F: Field) -> list:
    return [parse_affine(t, field=F) for t in texts]


def _out(args, *lines):
    if not args.quiet:
        for line in lines:
            print(line)


def _finish(args, report: VerificationReport) -> int:
    if args.json:
        write(args.json, report.to_dict())
    status = report.status
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}.get(status, EXIT_OK)


def _single(args, name: str, value, status: str = PASS, expected=None) -> int:
    env = {"field": getattr(args, "field", None) or "Q", "prime": getattr(args, "prime", None) or 10007}
    report = VerificationReport(name, env, [Check(name, expected, value, status)])
    return _finish(args, report)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_analyze(args) -> int:
    cfg = AnalysisConfig.load(args.config)
    env = {"prime": args.prime or cfg.prime}
    checks = analyze(cfg, {}, "", env)
    report = VerificationReport(f"config:{args.config}", {"field": cfg.field.name, "prime": env["prime"]}, checks)
    for c in checks:
        _out(args, f"{c.status:12s} {c.name}: {_brief(c.computed)}")
    _out(args, f"overall: {report.status}")
    return _finish(args, report)


def _brief(v) -> str:
    text = dumps(v).strip().replace("\n", " ")
    return " ".join(text.split())


def cmd_cofactor(args) -> int:
    F = _field(args)
    omega = _form(args, F)
    C = parse_affine(args.curve, field=F)
    K = dx.cofactor(C, omega)
    _out(args, str(K))
    return _single(args, "cofactor", str(K))


def cmd_kernel(args) -> int:
    F = _field(args)
    U = poly_product(_curves(args.curve, F), F)
    V = dx.kernel_space(U, args.degree)
    data = {"dim_V": V.dim, "hamiltonian_dim": V.hamiltonian_dim, "hamiltonian_dim_computed": V.hamiltonian_dim_computed}
    _out(args, f"dim V = {V.dim}", f"hamiltonian part = {V.hamiltonian_dim}")
    return _single(args, "kernel", data)


def cmd_degx(args) -> int:
    F = _field(args)
    U = poly_product(_curves(args.curve, F), F)
    L = dx.deg_X(U)
    data = {"deg_X": L.deg_X, "deg_Y": L.deg_Y, "e": L.e, "stabilization_degree": L.stabilization_degree}
    _out(args, f"deg X = {L.deg_X}", f"deg Y = {L.deg_Y}")
    return _single(args, "degx", data)


def cmd_tjurina(args) -> int:
    F = _field(args)
    C = parse_affine(args.poly, field=F)
    inv = lc.invariants_at(C, lc.MarkedPoint(_point(args.point, F)))
    _out(args, str(inv.tjurina))
    data = {"milnor": inv.milnor, "tjurina": inv.tjurina}
    if inv.t_z is not None:
        data["t_z"] = inv.t_z
    return _single(args, "tjurina", data)


def cmd_tz(args) -> int:
    F = _field(args)
    if args.germ:
        g = parse_affine(args.germ, field=F)
        tz, t = lc.modified_tjurina(g), lc.tjurina(g)
        i = lc.intersection_multiplicity_with_line(g)
    else:
        if not args.point:
            raise UsageError("--curve needs --point X:Y:0")
        pt = _point(args.point, F)
        if len(pt) != 3 or pt[2]:
            raise UsageError("the point must lie on z = 0")
        inv = lc.invariants_at(parse_affine(args.curve, field=F), lc.MarkedPoint(pt))
        tz, t, i = inv.t_z, inv.tjurina, inv.intersection_with_line
    _out(args, str(tz))
    return _single(args, "tz", {"t_z": tz, "tjurina": t, "intersection_with_line": i})


def cmd_eta(args) -> int:
    F = _field(args)
    if args.type:
        w = lc.type_weights(args.type)
        if w is None:
            raise UsageError(f"unknown singularity type {args.type!r}")
        r = et.predicted_eta_single(w[:2], w[2])
        _out(args, str(r))
        return _single(args, "eta", str(r))
    if not (args.curve and args.point):
        raise UsageError("eta needs --type, or --P --Q --curve ... --point")
    omega = _form(args, F)
    r = et.eta_at_point(omega, _curves(args.curve, F), _point(args.point, F))
    _out(args, str(r))
    return _single(args, "eta", str(r))


def cmd_certify(args) -> int:
    F = _field(args)
    omega = _form(args, F)
    curves = _curves(args.curve, F)
    cert = et.certificate_search(omega, curves)
    if cert is None:
        _out(args, "no relation among the cofactors and dw")
        return _single(args, "certificate", None, FAIL)
    data = {
        "kind": cert.kind,
        "alphas": list(cert.alphas),
        "alpha0": cert.alpha0,
        "integer_form": list(cert.integer_form) if cert.integer_form else None,
        "holds": cert.holds,
    }
    form = cert.integer_form or (list(cert.alphas) + [cert.alpha0])
    _out(args, f"{cert.kind}: ({', '.join(str(a) for a in form[:-1])} | {form[-1]})")
    return _single(args, "certificate", data, PASS if cert.holds else FAIL)


def cmd_focal(args) -> int:
    F = _field(args)
    if args.point:
        omega = _form(args, F)
        nf = fc.normalize_at(omega, _point(args.point, F))
        seq = fc.focal_values(nf, args.order, args.gauge)
        rows = [{"point": args.point, "field": F.name, "s": [str(s) for s in seq.s], "zero": seq.all_zero}]
    else:
        omega = _form(args, QQ)
        rows = [
            {"point": [str(c) for c in r.point], "field": r.field.name, "s": [str(s) for s in r.sequence.s], "zero": r.sequence.all_zero}
            for r in fc.focal_at_prime(omega, args.prime or 10007, args.order, args.gauge)
        ]
        if not rows:
            _out(args, "no center candidate over GF(p)")
            return _single(args, "focal", rows, INCONCLUSIVE)
    for r in rows:
        _out(args, f"{r['point']} over {r['field']}: " + ", ".join(r["s"]))
    ok = all(r["zero"] for r in rows)
    _out(args, "all focal values vanish" if ok else "some focal value is nonzero")
    return _single(args, "focal", rows, PASS if ok else FAIL, "all zero")


def cmd_tangent_rank(args) -> int:
    from .constructions import load_fixture, stage_config
    from .config import parse_value

    if args.fixture:
        fx = load_fixture(args.fixture)
        stage = fx["stages"][-1]
        fspec = stage.get("expected", {}).get("focal")
        if fspec is None:
            raise UsageError(f"fixture {args.fixture} records no focal point")
        F = field_from_spec(fspec["field"])
        omega = stage_config(stage).form.map_field(F)
        pt = tuple(parse_value(v, F) for v in fspec["point"])
    else:
        F = _field(args)
        if not args.point:
            raise UsageError("--point is required without --fixture")
        omega = _form(args, F)
        pt = _point(args.point, F)
    nf = fc.normalize_at(omega, pt)
    J = fc.focal_jacobian(nf, args.order)
    data = {"M": J.ambient_dim, "rank": J.rank, "tangent_dim": J.tangent_dim, "N": args.order, "field": F.name}
    _out(args, f"rank = {J.rank}", f"tangent dimension = {J.tangent_dim} (ambient M = {J.ambient_dim})")
    return _single(args, "tangent-rank", data)


def cmd_verify(args) -> int:
    env = {}
    if args.prime:
        env["prime"] = args.prime
    if args.no_focal:
        env["focal"] = False
    report = verify(args.id, env)
    for c in report.checks:
        _out(args, f"{c.status:12s} {c.name}: {_brief(c.computed)}")
    _out(args, f"overall: {report.status}")
    return _finish(args, report)


def cmd_list(args) -> int:
    rows = list_fixtures()
    for r in rows:
        t = r["table3"]
        note = f" [{t['zoladek']}]" if t and t["zoladek"] else ""
        _out(args, f"{r['id']:11s} {r['title']}{note}")
    _out(args, "", "ideal  families        bundled")
    for ideal, fam, status in TABLE3:
        _out(args, f"{ideal:6s} {fam:15s} {status}")
    if args.json:
        write(args.json, {"fixtures": rows, "table3": [list(r) for r in TABLE3]})
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "cofactor": cmd_cofactor,
    "kernel": cmd_kernel,
    "degx": cmd_degx,
    "tjurina": cmd_tjurina,
    "tz": cmd_tz,
    "eta": cmd_eta,
    "certify": cmd_certify,
    "focal": cmd_focal,
    "tangent-rank": cmd_tangent_rank,
    "verify-construction": cmd_verify,
    "list-constructions": cmd_list,
}


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required")
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError, PolySyntaxError, ArityMismatch, DegreeTooSmall) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveError as exc:
        print(f"inconclusive: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except DarbouxError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
