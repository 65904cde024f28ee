"""Ratio vectors (K_1(a) : ... : K_r(a) : dw(a)), their predictions from
singularity data, and exact Darboux certificates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from . import univariate as uv
from .darboux import _poly, as_projective, cofactor, has_component_at_infinity
from .errors import ComponentAtInfinity, HypothesisViolated
from .fields import QQ, Field
from .linalg import Matrix, nullspace
from .poly import DifferentialForm, Poly, curl


class RatioVector:
    """Projective tuple with an explicit degenerate (all zero) state."""

    __slots__ = ("entries", "field")

    def __init__(self, entries: Sequence, field: Field = QQ):
        self.field = field
        self.entries = tuple(field(v) for v in entries)

    @property
    def degenerate(self) -> bool:
        return not any(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, RatioVector) or len(self) != len(other):
            return NotImplemented
        if self.degenerate or other.degenerate:
            return self.degenerate and other.degenerate
        u, v = self.entries, other.entries
        return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))

    def __hash__(self):
        return hash(self.normalized())

    def matches(self, other: RatioVector) -> bool:
        """Equal, or degenerate (the dichotomy in the prediction statements)."""
        return self.degenerate or self == other

    def normalized(self) -> tuple:
        """Canonical representative: first nonzero entry 1 (integers over QQ)."""
        if self.degenerate:
            return self.entries
        lead = next(v for v in self.entries if v)
        vals = [v / lead for v in self.entries]
        if self.field == QQ:
            den = lcm(*(Fraction(v).denominator for v in vals))
            ints = [int(v * den) for v in vals]
            g = gcd(*ints)
            return tuple(i // g for i in ints)
        return tuple(vals)

    def __str__(self):
        return ":".join(self.field.format(v) if self.field != QQ else str(v) for v in self.normalized())

    def __repr__(self):
        return f"RatioVector({self})"


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _projective(pt: Sequence, F: Field) -> list:
    pt = [F(v) for v in pt]
    return pt + [F.one] if len(pt) == 2 else pt


def homogeneous_data(omega: DifferentialForm, curves: Sequence) -> tuple[list[Poly], Poly]:
    """Cofactors and curl of the homogenized form, all of degree d - 1."""
    hom = omega.homogenize()
    Ks = [cofactor(as_projective(c), hom) for c in curves]
    return Ks, curl(hom).coefficient


def eta_at_point(omega: DifferentialForm, curves: Sequence, point, field: Field | None = None) -> RatioVector:
    """(K_1(a) : ... : K_r(a) : dw(a)) at a projective (or affine) point.

    ``field`` may be an extension containing the point's coordinates; the
    polynomials are mapped into it.
    """
    F = field or omega.field
    Ks, dw = homogeneous_data(omega, curves)
    if F != omega.field:
        Ks = [k.map_field(F) for k in Ks]
        dw = dw.map_field(F)
    coords = getattr(point, "coords", point)
    a = _projective(coords, F)
    return RatioVector([k.evaluate(a) for k in Ks] + [dw.evaluate(a)], F)


def predicted_eta_single(weights: tuple[int, int], w_deg: int) -> RatioVector:
    """(deg C : deg x + deg y) for a quasi-homogeneous singular point."""
    wx, wy = weights
    return RatioVector([w_deg, wx + wy])


def predicted_eta_pair(deg_C: int, deg_D: int, w_x: int, w_y: int) -> RatioVector:
    """(deg C : deg D : deg x + deg y); requires deg C + deg D > w_x + w_y."""
    if deg_C + deg_D <= w_x + w_y:
        raise HypothesisViolated(f"deg CD = {deg_C + deg_D} is not larger than w_x + w_y = {w_x + w_y}")
    return RatioVector([deg_C, deg_D, w_x + w_y])


# ---------------------------------------------------------------------------
# the line at infinity
# ---------------------------------------------------------------------------


def _restricted_univariate(C: Poly) -> tuple[list, int]:
    """C(t, 1, 0) as a coefficient list, plus the multiplicity of the point (1:0:0)."""
    F = C.field
    e = C.degree
    coeffs = [F.zero] * (e + 1)
    for m, c in C.terms.items():
        if m[2] == 0:
            coeffs[m[0]] = coeffs[m[0]] + c
    coeffs = uv.trim(coeffs, F)
    return coeffs, e - (len(coeffs) - 1)


def _yun(f: list, F: Field) -> list[list]:
    """Square-free decomposition: factors s_1, s_2, ... with f ~ prod s_m^m."""
    out = []
    f = uv.monic(f, F)
    if len(f) <= 1:
        return out
    a = uv.pgcd(f, uv.derivative(f, F), F)
    b = uv.divmod_(f, a, F)[0]
    c = uv.divmod_(uv.derivative(f, F), a, F)[0]
    d = uv.sub(c, uv.derivative(b, F), F)
    while len(b) > 1:
        a = uv.pgcd(b, d, F)
        out.append(uv.monic(a, F))
        b = uv.divmod_(b, a, F)[0]
        c = uv.divmod_(d, a, F)[0]
        d = uv.sub(c, uv.derivative(b, F), F)
    return out


@dataclass(frozen=True)
class InfinityPointGroup:
    """Points of P^1_inf cut out by one factor of the coprime base.

    ``factor`` is a monic polynomial in t = x/y (points (t:1:0)); the empty
    tuple stands for the single point (1:0:0).
    """

    factor: tuple
    npoints: int


@dataclass(frozen=True)
class IncidenceRelation:
    points: tuple[InfinityPointGroup, ...]
    matrix: tuple[tuple[int, ...], ...]
    kernel: tuple[tuple, ...]
    restricted_identity_holds: tuple[bool, ...] | None


def infinity_points(curves: Sequence) -> list[InfinityPointGroup]:
    return list(_incidence(curves)[0])


def _incidence(curves: Sequence):
    polys = [as_projective(c) for c in curves]
    for p in polys:
        if has_component_at_infinity(p):
            raise ComponentAtInfinity("a curve has a component on z = 0")
    F = polys[0].field
    restricted = [_restricted_univariate(p) for p in polys]
    pieces = []
    for f, _ in restricted:
        pieces.extend(_yun(f, F))
    base = uv.coprime_base(pieces, F)
    base.sort(key=lambda b: (len(b), [str(c) for c in b]))
    groups = [InfinityPointGroup(tuple(b), len(b) - 1) for b in base]
    rows = []
    for f, mult_inf in restricted:
        rows.append([uv.multiplicity_in(f, b, F) for b in base])
    if any(mult for _, mult in restricted):
        groups.append(InfinityPointGroup((), 1))
        for row, (_, mult) in zip(rows, restricted):
            row.append(mult)
    return groups, rows, F


def count_points_at_infinity(curves: Sequence) -> int:
    """Distinct points of the union on z = 0, over the algebraic closure."""
    groups, _, _ = _incidence(curves)
    return sum(g.npoints for g in groups)


def infinity_incidence_relation(curves: Sequence, omega: DifferentialForm | None = None) -> IncidenceRelation:
    """Intersection multiplicities alpha_ij of curve i with point group j and
    the vectors beta with sum_i beta_i alpha_ij = 0 for all j.

    With a form supplied, checks that (sum beta_i K_i)|_{z=0} vanishes.
    """
    groups, rows, F = _incidence(curves)
    ncols = len(groups)
    # beta^T A = 0, i.e. the kernel of the transpose
    At = Matrix(QQ, [[rows[i][j] for i in range(len(rows))] for j in range(ncols)], len(rows))
    kernel = tuple(tuple(v) for v in nullspace(At)) if ncols else tuple(
        tuple(QQ.one if i == j else QQ.zero for i in range(len(rows))) for j in range(len(rows))
    )
    checks = None
    if omega is not None:
        Ks, _ = homogeneous_data(omega, curves)
        checks = []
        for b in kernel:
            total = Poly.zero(omega.field, 3)
            for beta, K in zip(b, Ks):
                total = total + K.scale(omega.field.from_fraction(Fraction(beta)))
            restricted = Poly(omega.field, {m: c for m, c in total.terms.items() if m[2] == 0}, 3)
            checks.append(not restricted)
        checks = tuple(checks)
    return IncidenceRelation(tuple(groups), tuple(tuple(r) for r in rows), kernel, checks)


def rational_infinity_points(curves: Sequence) -> list[tuple]:
    """Points of the union on z = 0 with coordinates in the base field."""
    groups, _, F = _incidence(curves)
    pts = []
    for g in groups:
        if not g.factor:
            pts.append((F.one, F.zero, F.zero))
            continue
        for r in uv.roots(list(g.factor), F):
            pts.append((F(r), F.one, F.zero))
    return pts


@dataclass(frozen=True)
class EtaAtInfinity:
    k: int
    predicted: RatioVector
    evaluations: tuple[tuple[tuple, RatioVector], ...]

    @property
    def all_match(self) -> bool:
        return all(v.matches(self.predicted) for _, v in self.evaluations)


def eta_at_infinity(omega: DifferentialForm, curves: Sequence) -> EtaAtInfinity:
    """(deg C_1 : ... : deg C_r : d + 1) when more than d + 1 points lie on z = 0,
    checked against the actual ratio at every base-field point at infinity."""
    d = omega.degree
    k = count_points_at_infinity(curves)
    if k <= d + 1:
        raise HypothesisViolated(f"only {k} points at infinity, need more than d + 1 = {d + 1}")
    predicted = RatioVector([_poly(c).degree for c in curves] + [d + 1])
    evals = tuple((p, eta_at_point(omega, curves, p)) for p in rational_infinity_points(curves))
    return EtaAtInfinity(k, predicted, evals)


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """``sum alpha_i K_i + alpha_0 dw = 0``.

    ``alphas`` are normalized so that alpha_0 = 1 when alpha_0 is nonzero
    (an integrating factor prod C_i^alpha_i); otherwise alpha_0 = 0 and the
    relation gives a first integral.  ``integer_form`` is the primitive integer
    vector (alpha_1, ..., alpha_r, alpha_0) with first nonzero entry positive,
    available over QQ.
    """

    alphas: tuple
    alpha0: object
    kind: str
    residual: Poly
    integer_form: tuple[int, ...] | None = None

    @property
    def holds(self) -> bool:
        return not self.residual


def _residual(alphas, alpha0, Ks, dw) -> Poly:
    total = dw.scale(alpha0)
    for a, K in zip(alphas, Ks):
        total = total + K.scale(a)
    return total


def _integer_form(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = lcm(*(Fraction(v).denominator for v in vec))
    ints = [int(Fraction(v) * den) for v in vec]
    g = gcd(*ints) or 1
    ints = [i // g for i in ints]
    lead = next((i for i in ints if i), 1)
    return tuple(-i for i in ints) if lead < 0 else tuple(ints)


def certificate_search(omega: DifferentialForm, curves: Sequence) -> Certificate | None:
    """Exact linear relation among the cofactors and the curl, if one exists."""
    F = omega.field
    Ks, dw = homogeneous_data(omega, curves)
    d = omega.degree
    from .poly import monomials

    mons = monomials(3, d - 1)
    cols = [K.coefficient_vector(mons) for K in Ks] + [dw.coefficient_vector(mons)]
    M = Matrix(F, [list(r) for r in zip(*cols)], len(cols))
    kernel = nullspace(M)
    if not kernel:
        return None
    chosen = next((v for v in kernel if v[-1]), kernel[0])
    if chosen[-1]:
        inv = F.one / chosen[-1]
        chosen = [c * inv for c in chosen]
        kind = "IntegratingFactor"
    else:
        kind = "FirstIntegral"
    alphas, alpha0 = tuple(chosen[:-1]), chosen[-1]
    residual = _residual(alphas, alpha0, Ks, dw)
    integer = _integer_form(chosen) if F == QQ else None
    return Certificate(alphas, alpha0, kind, residual, integer)


def check_certificate(omega: DifferentialForm, curves: Sequence, alphas: Sequence, alpha0) -> Certificate:
    """Re-substitute a given combination and report the residual."""
    F = omega.field
    Ks, dw = homogeneous_data(omega, curves)
    alphas = tuple(F(a) if not isinstance(a, Fraction) else F.from_fraction(a) for a in alphas)
    alpha0 = F.from_fraction(Fraction(alpha0)) if isinstance(alpha0, (int, Fraction)) else F(alpha0)
    residual = _residual(alphas, alpha0, Ks, dw)
    kind = "IntegratingFactor" if alpha0 else "FirstIntegral"
    integer = _integer_form(list(alphas) + [alpha0]) if F == QQ else None
    return Certificate(alphas, alpha0, kind, residual, integer)


def cleared_identity_residual(omega: DifferentialForm, curves: Sequence, cert: Certificate) -> Poly:
    """(prod C_j) * (alpha_0 dw + sum alpha_i K_i): the certificate identity with
    denominators of d(mu w) cleared."""
    polys = [as_projective(c) for c in curves]
    prod = polys[0]
    for p in polys[1:]:
        prod = prod * p
    Ks, dw = homogeneous_data(omega, curves)
    return prod * _residual(cert.alphas, cert.alpha0, Ks, dw)


def eta_reasoning(rows: Sequence, field: Field = QQ) -> list[list]:
    """Kernel of the matrix of (non-degenerate) ratio rows."""
    vecs = []
    for r in rows:
        entries = r.entries if isinstance(r, RatioVector) else tuple(field(v) for v in r)
        if any(entries):
            vecs.append(list(entries))
    if not vecs:
        return []
    return nullspace(Matrix(field, vecs, len(vecs[0])))
