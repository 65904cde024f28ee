
import pytest

from darbouxkit import GF, QQ, DifferentialForm, Poly, curl, parse_polynomial, wedge_with_dC
from darbouxkit.errors import ArityMismatch, NotDivisible, PolySyntaxError
from darbouxkit.poly import monomials

P = parse_polynomial


def test_arithmetic_and_degree():
    f = P("(x+y)^3 - x^3")
    assert f.degree == 3
    assert f == P("3*x^2*y + 3*x*y^2 + y^3")
    assert f.order == 3
    assert (f * P("x-1")).degree == 4


def test_exact_division():
    f = P("x^2-y^2")
    assert f.exact_div(P("x-y")) == P("x+y")
    with pytest.raises(NotDivisible):
        f.exact_div(P("x+2"))


def test_homogenize_and_affine_roundtrip():
    f = P("x^2*y + 3*x - 1")
    h = f.homogenize()
    assert h.is_homogeneous and h.nvars == 3
    assert h == P("x^2*y + 3*x*z^2 - z^3")
    assert h.affine("z") == f


def test_translate_moves_point_to_origin():
    f = P("(x-1)^2 + (y+2)^3")
    assert f.translate([1, -2]) == P("x^2 + y^3")


def test_diff_and_euler_relation():
    h = P("x^3 + 2*x*y*z - 5*z^3")
    x, y, z = (Poly.var(v, QQ, 3) for v in "xyz")
    assert x * h.diff("x") + y * h.diff("y") + z * h.diff("z") == h.scale(3)


def test_monomial_orders():
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert len(monomials(3, 3)) == 10


def test_map_field_reduces_rationals():
    f = P("1/2*x + 3").map_field(GF(7))
    assert f.coefficient((1, 0)) == GF(7)(4)


def test_arity_checks():
    with pytest.raises(ArityMismatch):
        P("x") + P("z")


def test_print_parse_fixed_point():
    for text in ["x^2 - y^3", "-1/8*x*y^2 + 3", "x + y + z", "0", "7"]:
        f = P(text)
        assert P(str(f)) == f
        assert str(P(str(f))) == str(f)


def test_parse_errors_carry_position():
    with pytest.raises(PolySyntaxError) as exc:
        P("x^^2")
    assert "column" in str(exc.value)
    with pytest.raises(SyntaxError):
        P("2*x+")


def test_curl_and_wedge():
    # x' = Q, y' = -P: the radial field has curl 2, the rotation preserves circles
    radial = DifferentialForm.parse("-y", "x")
    assert curl(radial).coefficient == P("2")
    rotation = DifferentialForm.parse("x", "y")
    assert curl(rotation).coefficient == Poly.zero(QQ)
    C = P("x^2+y^2-1")
    assert wedge_with_dC(C, rotation).coefficient == Poly.zero(QQ)
    assert wedge_with_dC(C, radial).coefficient == P("2*x^2+2*y^2")


def test_form_homogenize_degree():
    w = DifferentialForm.parse("x^2+1", "y")
    h = w.homogenize()
    assert h.degree == 2 and h.P == P("x^2+z^2") and h.Q == P("y*z")
