from fractions import Fraction

import pytest

from darbouxkit import DifferentialForm, parse_polynomial
from darbouxkit import eta as et
from darbouxkit.errors import HypothesisViolated

from helpers import stage

P = parse_polynomial
ORIGIN = (0, 0)


def single_form(C, wx, wy):
    """F*(-wy*y dx + wx*x dy) + G*dC: C is integral with the weighted Euler cofactor."""
    F, G = P("1+x+2*y"), P("3+y")
    x, y = P("x"), P("y")
    Pp = F * y.scale(-wy) + G * C.diff("x")
    Qp = F * x.scale(wx) + G * C.diff("y")
    return DifferentialForm(Pp, Qp, max(Pp.degree, Qp.degree))


def pair_form(C, D, wx, wy):
    F, G = P("1+x+2*y"), P("3+y")
    x, y = P("x"), P("y")
    Pp = F * y.scale(-wy) - G * C * D.diff("x")
    Qp = F * x.scale(wx) - G * C * D.diff("y")
    return DifferentialForm(Pp, Qp, max(Pp.degree, Qp.degree))


SINGLE = [
    ("x^2-y^2", (1, 1), 2, (1, 1)),
    ("x^2-y^3", (3, 2), 6, (6, 5)),
    ("x^2-y^4", (2, 1), 4, (4, 3)),
    ("x^2-y^5", (5, 2), 10, (10, 7)),  # A_4
    ("x^2-y^6", (3, 1), 6, (12, 8)),  # A_5
    ("x^3-y^3", (1, 1), 3, (3, 2)),
    ("y*(x^2-y^3)", (3, 2), 8, (8, 5)),  # D_5
    ("y*(x^2-y^4)", (2, 1), 5, (10, 6)),  # D_6
    ("x^3-y^4", (4, 3), 12, (12, 7)),
    ("x*(x^2-y^3)", (3, 2), 9, (9, 5)),
    ("x^3-y^5", (5, 3), 15, (15, 8)),
]


@pytest.mark.parametrize("germ,weights,wdeg,row", SINGLE)
def test_single_curve_ratio_table(germ, weights, wdeg, row):
    C = P(germ)
    predicted = et.predicted_eta_single(weights, wdeg)
    assert predicted == et.RatioVector(row)
    actual = et.eta_at_point(single_form(C, *weights), [C], ORIGIN)
    assert not actual.degenerate
    assert actual == predicted


PAIRS = [
    ("x-y^2", "x+y^2", (2, 1), (2, 2, 3)),
    ("x-y^3", "x+y^3", (3, 1), (3, 3, 4)),  # A_5
    ("y", "x^2-y^2", (1, 1), (1, 2, 2)),
    ("y", "x^2-y^3", (3, 2), (2, 6, 5)),  # D_5
    ("x", "x^2-y^3", (3, 2), (3, 6, 5)),
    ("x", "x^3-y^3", (1, 1), (1, 3, 2)),
]


def _wdeg(poly, wx, wy):
    return max(wx * m[0] + wy * m[1] for m in poly.terms)


@pytest.mark.parametrize("c,d,weights,row", PAIRS)
def test_pair_ratio_table(c, d, weights, row):
    C, D = P(c), P(d)
    predicted = et.predicted_eta_pair(_wdeg(C, *weights), _wdeg(D, *weights), *weights)
    assert predicted == et.RatioVector(row)
    actual = et.eta_at_point(pair_form(C, D, *weights), [C, D], ORIGIN)
    assert actual == predicted


def test_pair_prediction_needs_enough_degree():
    with pytest.raises(HypothesisViolated):
        et.predicted_eta_pair(1, 1, 1, 1)


def test_ratio_vector_equality_and_normalization():
    assert et.RatioVector([2, 4]) == et.RatioVector([-1, -2])
    assert et.RatioVector([0, 0]).degenerate
    assert et.RatioVector([0, 0]).matches(et.RatioVector([6, 5]))
    assert et.RatioVector([Fraction(-2, 3), Fraction(-5, 6), 1]).normalized() == (4, 5, -6)
    assert str(et.RatioVector([12, 10])) == "6:5"


def test_infinity_ratio_for_three_curves():
    cfg, _ = stage("9.8")
    curves = [cfg.curves[n] for n in cfg.curves]
    res = et.eta_at_infinity(cfg.form, curves)
    assert res.k > cfg.form.degree + 1
    assert res.all_match


def test_infinity_hypothesis_violated_for_few_points():
    w = DifferentialForm.parse("x", "y")
    with pytest.raises(HypothesisViolated):
        et.eta_at_infinity(w, [P("x^2+y^2-1")])


def test_incidence_tangent_conic():
    # a parabola meets the line at infinity in one point with multiplicity two
    rel = et.infinity_incidence_relation([P("y-x^2")])
    assert rel.matrix == ((2,),)
    assert rel.kernel == ()


def test_incidence_two_parallel_lines():
    rel = et.infinity_incidence_relation([P("x+y"), P("x+y-1")])
    assert len(rel.points) == 1
    assert [tuple(int(v) for v in b) for b in rel.kernel] in ([(1, -1)], [(-1, 1)])


def test_incidence_kernel_of_conic_and_two_lines():
    rel = et.infinity_incidence_relation([P("x*y-1"), P("x-3"), P("y+2")])
    assert sorted(rel.matrix) == sorted(((1, 1), (0, 1), (1, 0))) or len(rel.kernel) == 1
    (b,) = rel.kernel
    b = [Fraction(v) / Fraction(b[0]) for v in b]
    assert b == [1, -1, -1]


def test_eta_reasoning_kernels():
    (v,) = et.eta_reasoning([(0, 6, 5), (2, 2, 3), (1, 4, 4)])
    assert et.RatioVector(v).normalized() == (4, 5, -6)
    (v,) = et.eta_reasoning([(1, 1, 0), (0, 1, 1), (0, 0, 0)])
    assert et.RatioVector(v).normalized() == (1, -1, 1)
    assert et.eta_reasoning([(0, 0)]) == []


@pytest.mark.parametrize(
    "fid,stage_name,integer",
    [
        ("9.6", None, (1, -1, 1)),
        ("9.8", None, (4, 5, -6)),
        ("9.9", None, (1, 2, -2)),
        ("9.10", "core", (5, -6)),
        ("9.14", None, (1, -1)),
    ],
)
def test_certificates_of_constructions(fid, stage_name, integer):
    cfg, st = stage(fid, stage_name)
    from helpers import groups

    curves = groups(cfg) if cfg.groups else list(cfg.curves.values())
    cert = et.certificate_search(cfg.form, curves)
    assert cert.kind == "IntegratingFactor"
    assert cert.holds
    assert cert.integer_form == integer
    again = et.check_certificate(cfg.form, curves, cert.alphas, cert.alpha0)
    assert again.holds and not et.cleared_identity_residual(cfg.form, curves, cert)


def test_wrong_certificate_has_residual():
    cfg, _ = stage("9.14")
    from helpers import groups

    cert = et.check_certificate(cfg.form, groups(cfg), [1, 1], 1)
    assert not cert.holds


def test_no_certificate_when_cofactor_and_curl_are_independent():
    # the circle stays integral, with cofactor 2y^2, but the curl is not proportional
    w = DifferentialForm.parse("x+y*(x^2+y^2-1)", "y")
    C = P("x^2+y^2-1")
    assert et.certificate_search(w, [C]) is None
