"""Dense univariate polynomials as coefficient lists (constant term first).

Only what the curve and equilibrium code needs: Euclid, square-free parts,
root finding over finite fields (Cantor-Zassenhaus) and over QQ (modular roots,
Hensel lifting, rational reconstruction).
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt, lcm

from .fields import QQ, Field, FiniteField, PrimeField, is_prime


def trim(a: list, F: Field) -> list:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a: list) -> int:
    return len(a) - 1  # -1 for the zero polynomial


def add(a, b, F):
    n = max(len(a), len(b))
    z = F.zero
    return trim([(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)], F)


def sub(a, b, F):
    n = max(len(a), len(b))
    z = F.zero
    return trim([(a[i] if i < len(a) else z) - (b[i] if i < len(b) else z) for i in range(n)], F)


def mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                if v:
                    out[i + j] = out[i + j] + u * v
    return trim(out, F)


def divmod_(a, b, F):
    b = trim(b, F)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(a, F)
    inv = F.one / b[-1]
    q = [F.zero] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b):
        c = r[-1] * inv
        s = len(r) - len(b)
        q[s] = c
        for i, v in enumerate(b):
            if v:
                r[s + i] = r[s + i] - c * v
        r = trim(r, F)
    return trim(q, F), r


def monic(a, F):
    a = trim(a, F)
    if not a:
        return a
    inv = F.one / a[-1]
    return [v * inv for v in a]


def pgcd(a, b, F):
    a, b = trim(a, F), trim(b, F)
    while b:
        a, b = b, divmod_(a, b, F)[1]
    return monic(a, F)


def derivative(a, F):
    return trim([a[i] * i for i in range(1, len(a))], F)


def evaluate(a, x, F):
    s = F.zero
    for c in reversed(a):
        s = s * x + c
    return s


def squarefree_part(a, F):
    """Product of the distinct irreducible factors (monic).

    Uses gcd(a, a'); in characteristic p this is only correct when no factor
    is a p-th power, which holds for every degree below p.
    """
    a = monic(a, F)
    if len(a) <= 2:
        return a
    g = pgcd(a, derivative(a, F), F)
    return monic(divmod_(a, g, F)[0], F)


def root_multiplicity(a, r, F) -> int:
    m = 0
    lin = [-F(r), F.one]
    a = trim(a, F)
    while a:
        q, rem = divmod_(a, lin, F)
        if rem:
            break
        m += 1
        a = q
    return m


def powmod(base, e: int, m, F):
    result = [F.one]
    base = divmod_(base, m, F)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, F), m, F)[1]
        base = divmod_(mul(base, base, F), m, F)[1]
        e >>= 1
    return result


def element_key(v):
    """Deterministic sort key for finite-field elements."""
    if hasattr(v, "c"):
        return tuple(reversed(v.c))
    return int(v)


def field_order(F: FiniteField) -> int:
    return F.p ** getattr(F, "k", 1)


def roots_finite(a, F: FiniteField, seed: int = 0) -> list:
    """Distinct roots in F (sorted by their canonical representation)."""
    a = monic(a, F)
    if len(a) <= 1:
        return []
    q = field_order(F)
    x = [F.zero, F.one]
    # product of the distinct linear factors
    g = pgcd(a, sub(powmod(x, q, a, F), x, F), F)
    rng = random.Random(seed)
    out = []

    def split(f):
        if len(f) == 1:
            return
        if len(f) == 2:
            out.append(-f[0])
            return
        if q == 2:
            for c in (F.zero, F.one):
                if not evaluate(f, c, F):
                    out.append(c)
            return
        while True:
            shift = [F.random(rng), F.one]
            h = sub(powmod(shift, (q - 1) // 2, f, F), [F.one], F)
            d = pgcd(f, h, F)
            if 1 < len(d) < len(f):
                split(d)
                split(monic(divmod_(f, d, F)[0], F))
                return

    split(g)
    return sorted(out, key=element_key)


# ---------------------------------------------------------------------------
# rational roots
# ---------------------------------------------------------------------------


def _integer_coeffs(a: list[Fraction]) -> list[int]:
    den = lcm(*(Fraction(c).denominator for c in a))
    ints = [int(Fraction(c) * den) for c in a]
    g = gcd(*ints)
    return [v // g for v in ints]


def _rational_reconstruct(u: int, m: int, bound: int) -> Fraction | None:
    r0, r1, s0, s1 = m, u % m, 0, 1
    while r1 > bound:
        qt = r0 // r1
        r0, r1 = r1, r0 - qt * r1
        s0, s1 = s1, s0 - qt * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def rational_roots(a: list) -> list[Fraction]:
    """Distinct rational roots of a polynomial over QQ, sorted."""
    a = trim([Fraction(c) for c in a], QQ)
    if len(a) <= 1:
        return []
    roots = []
    # strip x = 0 first so the constant term is nonzero
    if not a[0]:
        roots.append(Fraction(0))
        while not a[0]:
            a = a[1:]
    f = _integer_coeffs(squarefree_part(a, QQ))
    if len(f) <= 1:
        return sorted(roots)
    lc, c0 = abs(f[-1]), abs(f[0])
    # any root n/d has |n| <= c0 and d <= lc
    bound = max(c0, lc)
    # a prime keeping f square-free with the same degree
    p = 1009
    while True:
        if f[-1] % p and is_prime(p):
            Fp = PrimeField(p)
            fp = [Fp(v) for v in f]
            if len(pgcd(fp, derivative(fp, Fp), Fp)) == 1:
                break
        p += 2
    Fp = PrimeField(p)
    fp = [Fp(v) for v in f]
    df = [i * f[i] for i in range(1, len(f))]
    mod_bound = 2 * bound * bound + 1
    for r in roots_finite(fp, Fp):
        u, m = int(r), p
        while m <= mod_bound:
            # Newton step modulo m^2
            m2 = m * m
            fu = sum(c * pow(u, i, m2) for i, c in enumerate(f)) % m2
            dfu = sum(c * pow(u, i, m) for i, c in enumerate(df)) % m
            u = (u - fu * pow(dfu, -1, m)) % m2
            m = m2
        cand = _rational_reconstruct(u, m, isqrt(m // 2))
        if cand is not None and not evaluate(f, cand, QQ):
            roots.append(cand)
    return sorted(set(roots))


def roots(a: list, F: Field) -> list:
    if F == QQ:
        return rational_roots(a)
    if isinstance(F, FiniteField):
        return roots_finite(a, F)
    raise NotImplementedError(f"root finding over {F}")


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------


def coprime_base(polys: list[list], F: Field) -> list[list]:
    """Pairwise coprime monic square-free polynomials whose products give the
    square-free parts of all inputs (gcd refinement)."""
    base: list[list] = []
    for f in polys:
        f = squarefree_part(f, F)
        if len(f) <= 1:
            continue
        new = []
        for b in base:
            g = pgcd(f, b, F)
            if len(g) > 1:
                rest = monic(divmod_(b, g, F)[0], F)
                new.append(g)
                if len(rest) > 1:
                    new.append(rest)
                f = monic(divmod_(f, g, F)[0], F)
            else:
                new.append(b)
        if len(f) > 1:
            new.append(f)
        base = new
    return base


def multiplicity_in(f: list, g: list, F: Field) -> int:
    """Largest m with g^m | f (g non-constant)."""
    m = 0
    f = trim(f, F)
    while f:
        q, r = divmod_(f, g, F)
        if r:
            break
        f = q
        m += 1
    return m
