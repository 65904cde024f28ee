from fractions import Fraction

import pytest

from darbouxkit import DifferentialForm, parse_polynomial
from darbouxkit import darboux as dx
from darbouxkit.errors import ComponentAtInfinity, NotFinite, NotIntegralCurve

from helpers import stage, union

P = parse_polynomial


def test_cofactor_of_tangent_parabola():
    w = DifferentialForm.parse("-2*y", "x")
    K = dx.cofactor(P("y-x^2"), w)
    assert K == P("2")


def test_circle_is_not_integral_for_the_radial_field():
    w = DifferentialForm.parse("-y", "x")
    assert dx.is_integral_curve(P("x^2+y^2-1"), w) is None
    with pytest.raises(NotIntegralCurve):
        dx.cofactor(P("x^2+y^2-1"), w)


def test_construction_curves_are_integral():
    cfg, _ = stage("9.6")
    K = dx.is_integral_curve(cfg.curves["L4"], cfg.form)
    assert K is not None and K.coefficient.degree == 2
    members = [cfg.curves[n] for n in ("L1", "L2", "L3", "Q")]
    assert dx.union_integral_curve_check(members, cfg.form)


def test_union_with_non_integral_factor():
    w = DifferentialForm.parse("x", "y")
    assert not dx.union_integral_curve_check([P("x^2+y^2-1"), P("x+y+3")], w)


def test_expected_dimension_examples():
    assert dx.expected_dimension(2, 4, 7) == 1
    assert dx.expected_dimension(3, 6, 20) == 1
    assert dx.expected_dimension(3, 5, 13) == 3


def test_deg_x_from_local_data():
    assert dx.deg_X_from_local_data([9, 1, 1, 1, 1, 1], [6]) == 20
    assert dx.deg_X_from_local_data([3, 3, 3, 1, 1, 1], [1]) == 13
    assert dx.deg_X_from_local_data([], []) == 0


def test_smooth_conic_linkage():
    L = dx.deg_X(P("x^2+y^2-z^2"))
    assert (L.deg_X, L.deg_Y) == (0, 1)


@pytest.mark.parametrize("fid,value", [("9.6", 20), ("9.8", 11), ("9.9", 13), ("9.14", 11), ("quartic-d2", 7)])
def test_deg_x_of_constructions(fid, value):
    cfg, _ = stage(fid)
    L = dx.deg_X(union(cfg))
    assert L.deg_X == value
    assert L.deg_X + L.deg_Y == (L.e - 1) ** 2


def test_multiple_factor_is_not_finite():
    with pytest.raises(NotFinite):
        dx.deg_X(P("(x^2+y^2-1)^2"))
    assert not dx.is_square_free(P("(x-1)^2*y"))
    assert dx.is_square_free(P("(x-1)*y"))


def test_component_at_infinity_rejected():
    with pytest.raises(ComponentAtInfinity):
        dx.deg_X(P("z*(x^2+y^2-z^2)"))


@pytest.mark.parametrize("fid,d,dim", [("9.6", 3, 1), ("9.9", 3, 3), ("quartic-d2", 2, 1), ("9.14", 3, 1)])
def test_kernel_dimension(fid, d, dim):
    cfg, _ = stage(fid)
    V = dx.kernel_space(union(cfg), d)
    assert V.dim == dim
    assert V.hamiltonian_dim == V.hamiltonian_dim_computed


def test_kernel_elements_are_integral():
    cfg, _ = stage("9.9")
    U = union(cfg)
    for el in dx.kernel_space(U, 3).basis:
        assert dx.is_integral_curve(U, el.form) is not None


def test_cofactor_slice_of_conic():
    C = P("x^2+y^2-z^2")
    assert [dx.cofactor_ideal_slice(C, k).dim for k in range(3)] == [0, 2, 5]


def test_dimension_formula_for_a_line():
    # the partials of a line are units, so every form of degree d-1 is a cofactor
    for d in (1, 2, 3):
        ok, data = dx.dimension_formula_check(P("x+2*y-3*z"), d)
        assert ok and data["cofactor_slice"] == d * (d + 1) // 2


def test_rigidity_of_the_conic():
    cfg, _ = stage("9.6")
    assert dx.curve_rigidity(cfg.form, cfg.curves["Q"]) == 1


def test_genericity_point_conditions():
    assert dx.genericity_points_condition([(0, 0), (1, 0), (0, 1)], 1)
    assert not dx.genericity_points_condition([(0, 0), (1, 1), (2, 2)], 1)
    pts = [(Fraction(-1, 2), -2), (Fraction(-1, 4), -2), (Fraction(-1, 4), -3), (2, -2), (-2, 4), (Fraction(-1, 4), Fraction(-5, 4))]
    assert dx.genericity_points_condition(pts, 2)
