"""Sparse polynomials in x, y (affine) or x, y, z (projective) over a field.

Terms are kept in a dict ``{exponent tuple: coefficient}`` without zero
coefficients.  The canonical term order is graded lexicographic with
x > y > z; iteration, printing and coefficient vectors all follow it, so
output is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .errors import ArityMismatch, DegreeTooSmall, MixedContexts, NotDivisible
from .fields import QQ, Field

VARS = ("x", "y", "z")
Monomial = tuple[int, ...]


def _grlex_key(m: Monomial):
    return (sum(m),) + m


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All monomials of exactly ``degree`` in ``nvars`` variables, grlex descending."""
    if degree < 0:
        return ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for a in range(degree, -1, -1):
        for rest in monomials(nvars - 1, degree - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def monomials_upto(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """Monomials of degree ``<= degree``, highest degree first."""
    out: list[Monomial] = []
    for k in range(degree, -1, -1):
        out.extend(monomials(nvars, k))
    return tuple(out)


class Poly:
    """Immutable sparse polynomial.

    ``nvars`` is 2 for affine polynomials in (x, y) and 3 for polynomials in
    (x, y, z).  Arithmetic between different arities raises
    :class:`ArityMismatch` instead of promoting silently.
    """

    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: Field, terms: Mapping[Monomial, object] | None = None, nvars: int = 2):
        if nvars not in (2, 3):
            raise ArityMismatch(f"nvars must be 2 or 3, got {nvars}")
        self.field = field
        self.nvars = nvars
        clean = {}
        for m, c in (terms or {}).items():
            if len(m) != nvars:
                raise ArityMismatch(f"monomial {m} has wrong arity for nvars={nvars}")
            c = field(c)
            if c:
                clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, terms: dict, nvars: int) -> Poly:
        """Trusted constructor: ``terms`` already clean."""
        obj = object.__new__(cls)
        obj.field, obj.nvars, obj.terms, obj._hash = field, nvars, terms, None
        return obj

    # --- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field: Field = QQ, nvars: int = 2) -> Poly:
        return cls._raw(field, {}, nvars)

    @classmethod
    def const(cls, c, field: Field = QQ, nvars: int = 2) -> Poly:
        return cls(field, {(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, name: str, field: Field = QQ, nvars: int = 2) -> Poly:
        i = VARS.index(name)
        if i >= nvars:
            raise ArityMismatch(f"variable {name} not available with nvars={nvars}")
        m = [0] * nvars
        m[i] = 1
        return cls._raw(field, {tuple(m): field.one}, nvars)

    @classmethod
    def monomial(cls, m: Monomial, c=1, field: Field = QQ) -> Poly:
        return cls(field, {tuple(m): c}, len(m))

    @classmethod
    def from_coefficients(cls, mons: Sequence[Monomial], coeffs: Sequence, field: Field) -> Poly:
        nvars = len(mons[0]) if mons else 2
        return cls(field, {m: c for m, c in zip(mons, coeffs)}, nvars)

    @classmethod
    def parse(cls, text: str, field: Field = QQ, nvars: int | None = None) -> Poly:
        from .parsing import parse_polynomial

        return parse_polynomial(text, field, nvars)

    # --- basic queries --------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int | None:
        """Total degree; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(m) for m in self.terms)

    @property
    def order(self) -> int | None:
        """Lowest total degree of a term; ``None`` for the zero polynomial."""
        if not self.terms:
            return None
        return min(sum(m) for m in self.terms)

    def degree_in(self, var: str) -> int | None:
        if not self.terms:
            return None
        i = VARS.index(var)
        return max(m[i] for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.field.zero)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Monomial, object]:
        m = max(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def homogeneous_part(self, k: int) -> Poly:
        return Poly._raw(self.field, {m: c for m, c in self.terms.items() if sum(m) == k}, self.nvars)

    def truncate(self, n: int) -> Poly:
        """Drop every term of total degree >= n."""
        return Poly._raw(self.field, {m: c for m, c in self.terms.items() if sum(m) < n}, self.nvars)

    def variables(self) -> set[str]:
        return {VARS[i] for m in self.terms for i, e in enumerate(m) if e}

    def coefficient_vector(self, mons: Sequence[Monomial]) -> list:
        z = self.field.zero
        return [self.terms.get(m, z) for m in mons]

    # --- arithmetic -----------------------------------------------------
    def _check(self, other: Poly):
        if self.nvars != other.nvars:
            raise ArityMismatch("cannot mix affine and projective polynomials")
        if self.field is not other.field and self.field != other.field:
            raise MixedContexts(f"{self.field} vs {other.field}")

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.const(self.field(other), self.field, self.nvars)

    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for m, c in other.terms.items():
            s = t.get(m)
            if s is None:
                t[m] = c
            else:
                s = s + c
                if s:
                    t[m] = s
                else:
                    del t[m]
        return Poly._raw(self.field, t, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, {m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> Poly:
        c = self.field(c)
        if not c:
            return Poly.zero(self.field, self.nvars)
        return Poly._raw(self.field, {m: a * c for m, a in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        t: dict = {}
        n = self.nvars
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1]) if n == 2 else (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                s = t.get(m)
                t[m] = c1 * c2 if s is None else s + c1 * c2
        return Poly._raw(self.field, {m: c for m, c in t.items() if c}, n)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(self.field.one, self.field, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, Poly):
            return self.exact_div(c)
        return self.scale(self.field.one / self.field(c))

    def exact_div(self, g: Poly) -> Poly:
        """Quotient ``self / g``; raises :class:`NotDivisible` unless g divides self."""
        self._check(g)
        if not g:
            raise NotDivisible("division by the zero polynomial")
        lm, lc = g.leading_term()
        inv = self.field.one / lc
        rem = dict(self.terms)
        quot: dict = {}
        gterms = list(g.terms.items())
        while rem:
            m = max(rem, key=_grlex_key)
            if any(a < b for a, b in zip(m, lm)):
                raise NotDivisible(f"{g} does not divide {self}")
            qm = tuple(a - b for a, b in zip(m, lm))
            qc = rem[m] * inv
            quot[qm] = qc
            for gm, gc in gterms:
                mm = tuple(a + b for a, b in zip(qm, gm))
                v = rem.get(mm, self.field.zero) - qc * gc
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Poly._raw(self.field, quot, self.nvars)

    def divides(self, f: Poly) -> bool:
        try:
            f.exact_div(self)
        except NotDivisible:
            return False
        return True

    def monic(self) -> Poly:
        """Scaled so that the grlex-leading coefficient is 1."""
        if not self:
            return self
        return self / self.leading_term()[1]

    # --- calculus and coordinates ----------------------------------------
    def diff(self, var: str) -> Poly:
        i = VARS.index(var)
        if i >= self.nvars:
            raise ArityMismatch(f"no variable {var} in a {self.nvars}-variable polynomial")
        t = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                v = c * e
                if v:
                    mm = list(m)
                    mm[i] -= 1
                    t[tuple(mm)] = v
        return Poly._raw(self.field, t, self.nvars)

    def homogenize(self, target_degree: int | None = None) -> Poly:
        """Projective polynomial of the given degree (default: own degree)."""
        if self.nvars != 2:
            raise ArityMismatch("homogenize expects an affine polynomial")
        deg = self.degree
        e = (deg if deg is not None else 0) if target_degree is None else target_degree
        if deg is not None and e < deg:
            raise DegreeTooSmall(f"cannot homogenize degree {deg} to degree {e}")
        return Poly._raw(self.field, {(a, b, e - a - b): c for (a, b), c in self.terms.items()}, 3)

    def dehomogenize(self, var: str = "z") -> Poly:
        """Set ``var`` to 1.  The result keeps three slots; see :meth:`affine`."""
        if self.nvars != 3:
            raise ArityMismatch("dehomogenize expects a projective polynomial")
        i = VARS.index(var)
        t: dict = {}
        for m, c in self.terms.items():
            mm = list(m)
            mm[i] = 0
            mm = tuple(mm)
            s = t.get(mm)
            t[mm] = c if s is None else s + c
        return Poly._raw(self.field, {m: c for m, c in t.items() if c}, 3)

    def affine(self, var: str = "z") -> Poly:
        """Dehomogenize with respect to ``var`` and return a 2-variable polynomial.

        The two remaining variables keep their relative order: setting z = 1
        gives a polynomial in (x, y), setting x = 1 gives one in (y, z) and so on.
        """
        i = VARS.index(var)
        d = self.dehomogenize(var)
        keep = [j for j in range(3) if j != i]
        return Poly._raw(self.field, {tuple(m[j] for j in keep): c for m, c in d.terms.items()}, 2)

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ArityMismatch(f"expected {self.nvars} coordinates, got {len(point)}")
        F = self.field
        pt = [F(v) for v in point]
        powers: list[dict[int, object]] = [{0: F.one} for _ in pt]

        def pw(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = pt[i] ** e
            return cache[e]

        total = F.zero
        for m, c in self.terms.items():
            v = c
            for i, e in enumerate(m):
                if e:
                    v = v * pw(i, e)
            total = total + v
        return total

    def __call__(self, *point):
        return self.evaluate(point)

    def compose(self, images: Sequence[Poly]) -> Poly:
        """Substitute polynomials for the variables (``images[i]`` replaces variable i)."""
        if len(images) != self.nvars:
            raise ArityMismatch("one image per variable required")
        target = images[0]
        result = Poly.zero(target.field, target.nvars)
        cache: list[dict[int, Poly]] = [{} for _ in images]

        def pw(i, e):
            if e not in cache[i]:
                cache[i][e] = images[i] ** e
            return cache[i][e]

        for m, c in self.sorted_terms():
            term = Poly.const(c, target.field, target.nvars)
            for i, e in enumerate(m):
                if e:
                    term = term * pw(i, e)
            result = result + term
        return result

    def translate(self, shift: Sequence) -> Poly:
        """``f(v + shift)``: moves the point ``shift`` to the origin."""
        F = self.field
        imgs = [Poly.var(VARS[i], F, self.nvars) + F(s) for i, s in enumerate(shift)]
        return self.compose(imgs)

    def map_field(self, field: Field) -> Poly:
        """Reduce/embed coefficients into another field (rationals via ``from_fraction``)."""
        t = {}
        for m, c in self.terms.items():
            v = field.from_fraction(c) if isinstance(c, Fraction) else field(c)
            if v:
                t[m] = v
        return Poly._raw(field, t, self.nvars)

    def clear_denominators(self) -> Poly:
        """Over QQ: the primitive integer multiple with positive leading coefficient."""
        from math import gcd, lcm

        if self.field != QQ or not self:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = gcd(*nums)
        lead = self.leading_term()[1]
        s = Fraction(den, g) * (1 if lead > 0 else -1)
        return self.scale(s)

    # --- comparisons and printing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if not self.terms:
            return other == 0
        if self.is_constant() and len(self.terms) == 1:
            return next(iter(self.terms.values())) == other
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = VARS[: self.nvars]
        parts = []
        for m, c in self.sorted_terms():
            s = self.field.format(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e]
            if factors:
                body = "*".join(factors) if s == "1" else s + "*" + "*".join(factors)
            else:
                body = s
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, {self.field}, nvars={self.nvars})"


def poly_sum(polys: Iterable[Poly], field: Field = QQ, nvars: int = 2) -> Poly:
    total = Poly.zero(field, nvars)
    for p in polys:
        total = total + p
    return total


def poly_product(polys: Iterable[Poly], field: Field = QQ, nvars: int = 2) -> Poly:
    total = Poly.const(1, field, nvars)
    for p in polys:
        total = total * p
    return total


# ---------------------------------------------------------------------------
# differential forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoForm:
    """``R dx^dy``; only the coefficient polynomial is stored."""

    coefficient: Poly

    def evaluate(self, point):
        return self.coefficient.evaluate(point)

    def __str__(self):
        return f"({self.coefficient}) dx^dy"


@dataclass(frozen=True)
class DifferentialForm:
    """``P dx + Q dy`` with a declared degree bound ``d``."""

    P: Poly
    Q: Poly
    degree: int

    def __post_init__(self):
        if self.P.nvars != self.Q.nvars:
            raise ArityMismatch("P and Q must have the same arity")
        if self.P.field != self.Q.field:
            raise MixedContexts("P and Q must live over the same field")
        if self.degree < 1:
            raise ValueError("declared degree must be >= 1")
        for name, f in (("P", self.P), ("Q", self.Q)):
            if f and f.degree > self.degree:
                raise DegreeTooSmall(f"deg {name} = {f.degree} exceeds declared degree {self.degree}")
        if self.P.nvars == 3:
            for name, f in (("P", self.P), ("Q", self.Q)):
                if f and (not f.is_homogeneous() or f.degree != self.degree):
                    raise ValueError(f"projective {name} must be homogeneous of degree {self.degree}")

    @classmethod
    def parse(cls, P: str, Q: str, degree: int | None = None, field: Field = QQ) -> DifferentialForm:
        p, q = Poly.parse(P, field, 2), Poly.parse(Q, field, 2)
        if degree is None:
            degree = max(p.degree or 1, q.degree or 1)
        return cls(p, q, degree)

    @property
    def field(self) -> Field:
        return self.P.field

    @property
    def is_projective(self) -> bool:
        return self.P.nvars == 3

    def homogenize(self) -> DifferentialForm:
        if self.is_projective:
            return self
        return DifferentialForm(self.P.homogenize(self.degree), self.Q.homogenize(self.degree), self.degree)

    def map_field(self, field: Field) -> DifferentialForm:
        return DifferentialForm(self.P.map_field(field), self.Q.map_field(field), self.degree)

    def scale(self, c) -> DifferentialForm:
        return DifferentialForm(self.P.scale(c), self.Q.scale(c), self.degree)

    def __mul__(self, f: Poly) -> DifferentialForm:
        """Multiply by a polynomial; the declared degree grows by ``deg f``."""
        return DifferentialForm(self.P * f, self.Q * f, self.degree + (f.degree or 0))

    def curl(self) -> TwoForm:
        return curl(self)

    def evaluate(self, point):
        return self.P.evaluate(point), self.Q.evaluate(point)

    def __str__(self):
        return f"({self.P}) dx + ({self.Q}) dy"


def curl(omega: DifferentialForm) -> TwoForm:
    """``d(P dx + Q dy) = (Q_x - P_y) dx^dy``."""
    return TwoForm(omega.Q.diff("x") - omega.P.diff("y"))


def wedge_with_dC(C: Poly, omega: DifferentialForm) -> TwoForm:
    """``dC ^ omega = (C_x Q - C_y P) dx^dy``."""
    if C.nvars != omega.P.nvars:
        raise ArityMismatch("curve and form must both be affine or both projective")
    return TwoForm(C.diff("x") * omega.Q - C.diff("y") * omega.P)
