import random
from fractions import Fraction

import pytest

from darbouxkit import GF, QQ, DualNumbers, field_from_spec
from darbouxkit.errors import DivisionByZero, MixedContexts


def test_rational_arithmetic_is_exact():
    a, b = QQ(Fraction(1, 3)), QQ(Fraction(2, 7))
    assert a + b == Fraction(13, 21)
    assert a / b == Fraction(7, 6)
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert QQ.sqrt(2) is None


def test_prime_field_basics():
    F = GF(7)
    assert F(3) * F(5) == F(1)
    assert F(3) / F(5) == F(2)
    assert -F(1) == F(6)
    assert F.from_fraction(Fraction(1, 2)) == F(4)
    with pytest.raises(DivisionByZero):
        F(1) / F(0)


def test_prime_field_sqrt():
    F = GF(10007)
    for v in (4, 2, 3, 10006):
        r = F.sqrt(F(v))
        if r is None:
            assert pow(v, (10007 - 1) // 2, 10007) == 10006
        else:
            assert r * r == F(v)
    assert F.sqrt(F(-1)) is None


def test_extension_field_has_all_base_square_roots():
    K = GF(10007, 2)
    for v in (-1, -144, 3, 5):
        r = K.sqrt(K(v))
        assert r is not None and r * r == K(v)


def test_extension_field_inverse():
    K = GF(5, 3)
    rng = random.Random(1)
    for _ in range(20):
        a = K.random(rng)
        if a:
            assert a * (K.one / a) == K.one


def test_mixed_contexts_rejected():
    with pytest.raises(MixedContexts):
        GF(5)(1) + GF(7)(1)


def test_dual_numbers():
    D = DualNumbers(GF(11))
    e = D.eps
    assert e * e == D.zero
    x = D(3) + e
    assert (x * x).b == GF(11)(6)
    assert (D.one / x) * x == D.one


def test_field_specs():
    assert field_from_spec("Q") is QQ
    assert field_from_spec("Fp", 13) == GF(13)
    assert field_from_spec("Fp^2", 13) == GF(13, 2)
    assert field_from_spec("GF(101^2)") == GF(101, 2)
    with pytest.raises(ValueError):
        field_from_spec("R")
