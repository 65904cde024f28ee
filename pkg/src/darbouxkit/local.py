"""Local invariants of plane curve germs: Milnor, Tjurina and modified Tjurina
numbers, intersection multiplicity with a line, quasi-homogeneous weights.

A germ is an affine (2-variable) polynomial whose point of interest is the
origin.  For points on the line at infinity the two local coordinates are
(u, v) = (coordinate along the line, z); ``v = 0`` is the line itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import ArityMismatch, ComponentOnLine, NotFiniteColength
from .fields import QQ, Field, PrimeField
from .linalg import SparseEchelon
from .poly import Poly, monomials, monomials_upto

N_MAX = 40


# ---------------------------------------------------------------------------
# colength of an ideal at the origin
# ---------------------------------------------------------------------------


def _truncated_rank(gens: Sequence[Poly], N: int) -> int:
    """Rank of the truncations below degree N of all monomial multiples."""
    F = gens[0].field
    cols = monomials_upto(2, N - 1)
    index = {m: i for i, m in enumerate(cols)}
    ech = SparseEchelon(F, index)
    for g in gens:
        terms = list(g.terms.items())
        if F == QQ:
            terms = [(m, int(c)) for m, c in terms]
        elif isinstance(F, PrimeField):
            terms = [(m, c.v) for m, c in terms]
        low = g.order
        for k in range(0, N - low):
            for mono in monomials(2, k):
                row = {}
                for m, c in terms:
                    mm = (m[0] + mono[0], m[1] + mono[1])
                    if mm[0] + mm[1] < N:
                        row[index[mm]] = c
                if row:
                    ech.add_prepared(row)
    return ech.rank


def _d_N(gens: Sequence[Poly], N: int) -> int:
    return N * (N + 1) // 2 - _truncated_rank(gens, N)


def colength_with_truncation(gens: Sequence[Poly]) -> tuple[int, int]:
    """dim k[[u, v]] / (gens) at the origin, and the truncation N that proved it.

    ``d_N = dim k[u,v] / (gens + m^N)`` is nondecreasing in N.  If
    d_N = d_(N+1) then m^N lies in (gens) + m^(N+1), hence in (gens) by
    Nakayama, so d_N is the colength.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise NotFiniteColength("zero ideal")
    if any(g.nvars != 2 for g in gens):
        raise ArityMismatch("germs are 2-variable polynomials")
    if any(g.order == 0 for g in gens):
        return 0, 1
    if gens[0].field == QQ:
        gens = [g.clear_denominators() for g in gens]
    prev = _d_N(gens, 1)
    for N in range(2, N_MAX + 1):
        cur = _d_N(gens, N)
        if cur == prev:
            return cur, N - 1
        prev = cur
    raise NotFiniteColength(f"colength did not stabilize by N = {N_MAX}")


def colength(gens: Sequence[Poly]) -> int:
    return colength_with_truncation(gens)[0]


# ---------------------------------------------------------------------------
# affine germs
# ---------------------------------------------------------------------------


def _dx(F: Poly) -> Poly:
    return F.diff("x")


def _dy(F: Poly) -> Poly:
    return F.diff("y")


def milnor(F: Poly) -> int:
    return colength([_dx(F), _dy(F)])


def tjurina(F: Poly) -> int:
    return colength([F, _dx(F), _dy(F)])


def modified_tjurina(F: Poly) -> int:
    """``dim k[[u, v]] / (F, F_u, v F_v)`` for a germ with no component on v = 0."""
    _check_no_line_component(F)
    v = Poly.var("y", F.field, 2)
    return colength([F, _dx(F), v * _dy(F)])


def _restriction_to_line(F: Poly) -> list:
    """Coefficients of F(u, 0), constant term first."""
    deg = max((m[0] for m in F.terms if m[1] == 0), default=-1)
    out = [F.field.zero] * (deg + 1)
    for m, c in F.terms.items():
        if m[1] == 0:
            out[m[0]] = c
    return out


def _check_no_line_component(F: Poly):
    if not any(m[1] == 0 for m in F.terms):
        raise ComponentOnLine("the germ vanishes identically on v = 0")


def intersection_multiplicity_with_line(F: Poly) -> int:
    """Order of vanishing of F(u, 0) at u = 0."""
    _check_no_line_component(F)
    return min(m[0] for m in F.terms if m[1] == 0)


def quasi_homogeneous_weights(F: Poly) -> tuple[int, int, int] | None:
    """Positive coprime weights (w_x, w_y) and weighted degree when the support
    of F lies on one line of negative slope; None otherwise."""
    if F.nvars != 2:
        raise ArityMismatch("germs are 2-variable polynomials")
    support = sorted(F.terms)
    if len(support) < 2:
        return None
    (a1, b1), (a2, b2) = support[0], support[-1]
    wx, wy = b1 - b2, a2 - a1
    if wx < 0:
        wx, wy = -wx, -wy
    if wx <= 0 or wy <= 0:
        return None
    g = gcd(wx, wy)
    wx, wy = wx // g, wy // g
    wdeg = a1 * wx + b1 * wy
    if any(a * wx + b * wy != wdeg for a, b in support):
        return None
    return wx, wy, wdeg


# ---------------------------------------------------------------------------
# points of projective curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MarkedPoint:
    """A projective point with a label and an optional declared singularity type.

    ``chart`` names the dehomogenized coordinate; it defaults to z for affine
    points, to x on the line at infinity, and to y for (0:1:0).
    """

    coords: tuple
    label: str = ""
    declared_type: str | None = None
    chart: str | None = None

    def normalized(self, F: Field) -> tuple:
        c = tuple(F(v) for v in self.coords)
        if len(c) == 2:
            c = c + (F.one,)
        if not any(c):
            raise ValueError("a projective point needs a nonzero coordinate")
        return c

    def resolved_chart(self, F: Field) -> str:
        if self.chart:
            return self.chart
        X, Y, Z = self.normalized(F)
        if Z:
            return "z"
        return "x" if X else "y"

    def at_infinity(self, F: Field) -> bool:
        return not self.normalized(F)[2]


@dataclass(frozen=True)
class LocalInvariants:
    milnor: int
    tjurina: int
    t_z: int | None = None
    intersection_with_line: int | None = None
    truncation_used: int = 0
    chart: str = "z"


def germ_at(C: Poly, point: MarkedPoint) -> Poly:
    """Dehomogenize C in the point's chart and move the point to the origin.

    In the x- and y-charts the remaining coordinates are ordered so that the
    second local variable is z.
    """
    F = C.field
    Ch = C if C.nvars == 3 else C.homogenize()
    X, Y, Z = point.normalized(F)
    chart = point.resolved_chart(F)
    if chart == "z":
        g = Ch.affine("z")
        return g.translate([X / Z, Y / Z])
    if chart == "x":
        g = Ch.affine("x")  # variables (y, z)
        return g.translate([Y / X, Z / X])
    g = Ch.affine("y")  # variables (x, z)
    return g.translate([X / Y, Z / Y])


def invariants_at(C: Poly, point: MarkedPoint) -> LocalInvariants:
    """Milnor/Tjurina numbers at the point, plus t_z and the intersection
    multiplicity with z = 0 for points on the line at infinity."""
    F = C.field
    Ch = C if C.nvars == 3 else C.homogenize()
    if Ch.evaluate(point.normalized(F)):
        raise ValueError(f"point {point.label or point.coords} is not on the curve")
    g = germ_at(Ch, point)
    chart = point.resolved_chart(F)
    m, n1 = colength_with_truncation([_dx(g), _dy(g)])
    t, n2 = colength_with_truncation([g, _dx(g), _dy(g)])
    if point.at_infinity(F):
        if chart == "z":
            raise ValueError("a point at infinity needs the x or y chart")
        _check_no_line_component(g)
        v = Poly.var("y", F, 2)
        tz, n3 = colength_with_truncation([g, _dx(g), v * _dy(g)])
        return LocalInvariants(m, t, tz, intersection_multiplicity_with_line(g), max(n1, n2, n3), chart)
    return LocalInvariants(m, t, None, None, max(n1, n2), chart)


# declared normal forms: (w_x, w_y, weighted degree) of the quasi-homogeneous model
def type_weights(declared: str) -> tuple[int, int, int] | None:
    """Weights of the standard quasi-homogeneous model of a simple singularity
    (A_n, D_n, E_6, E_7, E_8) or an ordinary 4-fold point."""
    t = declared.strip().replace("_", "").upper()
    aliases = {"NODE": "A1", "CUSP": "A2", "TACNODE": "A3", "TRIPLE": "D4", "4-FOLD": "Q4", "FOURFOLD": "Q4"}
    t = aliases.get(t, t)
    if t == "Q4":
        return 1, 1, 4
    try:
        n = int(t[1:])
    except ValueError:
        return None
    if t[0] == "A" and n >= 1:
        wx, wy, deg = n + 1, 2, 2 * n + 2
    elif t[0] == "D" and n >= 4:
        wx, wy, deg = n - 2, 2, 2 * n - 2
    elif t == "E6":
        wx, wy, deg = 4, 3, 12
    elif t == "E7":
        wx, wy, deg = 3, 2, 9
    elif t == "E8":
        wx, wy, deg = 5, 3, 15
    else:
        return None
    g = gcd(gcd(wx, wy), deg)
    return wx // g, wy // g, deg // g


def type_tjurina(declared: str) -> int | None:
    """Milnor = Tjurina number of the declared simple type (9 for a 4-fold point)."""
    t = declared.strip().replace("_", "").upper()
    aliases = {"NODE": "A1", "CUSP": "A2", "TACNODE": "A3", "TRIPLE": "D4", "4-FOLD": "Q4", "FOURFOLD": "Q4"}
    t = aliases.get(t, t)
    if t == "Q4":
        return 9
    if t in ("E6", "E7", "E8"):
        return int(t[1])
    try:
        return int(t[1:]) if t[0] in "AD" else None
    except ValueError:
        return None
