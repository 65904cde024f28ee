"""Focal values of a center candidate and their first-order variation.

A form ``P dx + Q dy`` describes the system x' = Q, y' = -P.  At a normalized
equilibrium P = c x + p, Q = c y + q, and the formal series
F = x^2 + y^2 + f_3 + f_4 + ... is built degree by degree from

    F_x Q - F_y P = sum_j s_j (x^(2j+2) + y^(2j+2)).

Odd degrees have a unique solution; in even degree k the unknown s_(k-2)/2
enters and the kernel direction (x^2 + y^2)^(k/2) is fixed by a gauge (the
x^k or the y^k coefficient of f_k is zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import univariate as uv
from .errors import (
    CharacteristicTooSmall,
    NoSolution,
    NotCenterCandidate,
    NotEquilibrium,
    PositiveDimensionalZeroSet,
    SolveFailure,
    SquareRootUnavailable,
)
from .fields import DualNumbers, Field, FiniteField, PrimeField
from .linalg import Matrix, determinant, solve
from .poly import DifferentialForm, Poly, monomials

GAUGE_X = "x^k coefficient of f_k is zero (even k)"
GAUGE_Y = "y^k coefficient of f_k is zero (even k)"


# ---------------------------------------------------------------------------
# equilibria
# ---------------------------------------------------------------------------


def _y_coefficients(f: Poly) -> list[list]:
    """f as a polynomial in y whose coefficients are univariate lists in x."""
    F = f.field
    dy = f.degree_in("y") or 0
    dx = f.degree_in("x") or 0
    out = [[F.zero] * (dx + 1) for _ in range(dy + 1)]
    for (a, b), c in f.terms.items():
        out[b][a] = c
    return out


def _specialize(ycoeffs: list[list], x0, F: Field) -> list:
    return uv.trim([uv.evaluate(cx, x0, F) for cx in ycoeffs], F)


def _resultant_at(fy: list, gy: list, F: Field):
    """Sylvester resultant of two y-polynomials given with formal degrees."""
    m, n = len(fy) - 1, len(gy) - 1
    if m == 0 and n == 0:
        return F.one
    size = m + n
    rows = []
    for i in range(n):
        rows.append([F.zero] * i + list(reversed(fy)) + [F.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([F.zero] * i + list(reversed(gy)) + [F.zero] * (size - n - 1 - i))
    return determinant(Matrix(F, rows, size))


def _resultant_x(P: Poly, Q: Poly) -> list:
    """Res_y(P, Q) as a univariate polynomial in x (evaluation/interpolation)."""
    F = P.field
    Py, Qy = _y_coefficients(P), _y_coefficients(Q)
    bound = (P.degree or 0) * (Q.degree or 0)
    xs, vals = [], []
    x0 = 0
    while len(xs) <= bound:
        xv = F(x0)
        if xv not in xs:
            fy = [uv.evaluate(c, xv, F) for c in Py]
            gy = [uv.evaluate(c, xv, F) for c in Qy]
            xs.append(xv)
            vals.append(_resultant_at(fy, gy, F))
        x0 += 1
    # Lagrange interpolation
    result: list = []
    for i, (xi, vi) in enumerate(zip(xs, vals)):
        if not vi:
            continue
        num, den = [F.one], F.one
        for j, xj in enumerate(xs):
            if j != i:
                num = uv.mul(num, [-xj, F.one], F)
                den = den * (xi - xj)
        result = uv.add(result, [c * vi / den for c in num], F)
    return result


def equilibria(omega: DifferentialForm) -> list[tuple]:
    """Common zeros of P and Q in the base field, sorted.

    Over GF(p) every x0 is scanned with a univariate gcd in y; over other
    fields x0 runs over the roots of the resultant in y.
    """
    P, Q = omega.P, omega.Q
    if P.nvars != 2:
        raise ValueError("equilibria expects an affine form")
    F = P.field
    if not P or not Q:
        raise PositiveDimensionalZeroSet("P or Q is identically zero")
    Py, Qy = _y_coefficients(P), _y_coefficients(Q)
    if isinstance(F, PrimeField):
        xs = [F(v) for v in range(F.p)]
    else:
        res = _resultant_x(P, Q)
        if not res:
            raise PositiveDimensionalZeroSet("P and Q share a factor")
        xs = uv.roots(res, F)
    pts = []
    for x0 in xs:
        fy, gy = _specialize(Py, x0, F), _specialize(Qy, x0, F)
        if not fy and not gy:
            raise PositiveDimensionalZeroSet(f"P and Q both vanish on the line x = {x0}")
        g = uv.pgcd(fy, gy, F) if fy and gy else uv.monic(fy or gy, F)
        if len(g) > 1:
            pts.extend((x0, y0) for y0 in uv.roots(g, F))
    return pts


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def linear_part(omega: DifferentialForm, point: Sequence) -> tuple:
    """S = [[P_x, P_y], [Q_x, Q_y]] at the point."""
    P, Q = omega.P, omega.Q
    return (
        (P.diff("x").evaluate(point), P.diff("y").evaluate(point)),
        (Q.diff("x").evaluate(point), Q.diff("y").evaluate(point)),
    )


def is_center_candidate(omega: DifferentialForm, point: Sequence) -> bool:
    (a, b), (c, d) = linear_part(omega, point)
    return b == c and bool(a * d - b * c)


@dataclass(frozen=True)
class NormalForm:
    """P = c x + p, Q = c y + q with p, q of order >= 2."""

    omega: DifferentialForm
    c: object
    point: tuple
    transform: tuple  # the matrix M with (x, y) = M (u, v) + point

    @property
    def field(self) -> Field:
        return self.omega.field

    @property
    def p(self) -> Poly:
        return self.omega.P - Poly.var("x", self.field).scale(self.c)

    @property
    def q(self) -> Poly:
        return self.omega.Q - Poly.var("y", self.field).scale(self.c)


def pullback(omega: DifferentialForm, M, shift) -> DifferentialForm:
    """Pull back along (x, y) = M (u, v) + shift: (P', Q') = M^T (P, Q)."""
    F = omega.field
    u, v = Poly.var("x", F), Poly.var("y", F)
    images = [u.scale(M[0][0]) + v.scale(M[0][1]), u.scale(M[1][0]) + v.scale(M[1][1])]
    P = omega.P.translate(shift).compose(images)
    Q = omega.Q.translate(shift).compose(images)
    return DifferentialForm(P.scale(M[0][0]) + Q.scale(M[1][0]), P.scale(M[0][1]) + Q.scale(M[1][1]), omega.degree)


def normalize_at(omega: DifferentialForm, point: Sequence) -> NormalForm:
    """Move an equilibrium to the origin and bring its linear part to c * I.

    The linear part S is symmetric when the trace of the linearization
    vanishes; a congruence M^T S M = c I then needs a square root of det S in
    the working field.
    """
    F = omega.field
    pt = tuple(F(v) for v in point)
    if omega.P.evaluate(pt) or omega.Q.evaluate(pt):
        raise NotEquilibrium(f"{point} is not a zero of the form")
    (a, b), (b2, g) = linear_part(omega, pt)
    if b != b2:
        raise NotCenterCandidate("the linearization has nonzero trace")
    det = a * g - b * b
    if not det:
        raise NotCenterCandidate("the linearization is degenerate")
    # a first vector w with w^T S w != 0
    one, zero = F.one, F.zero
    for w in ((one, zero), (zero, one), (one, one)):
        val = a * w[0] * w[0] + 2 * b * w[0] * w[1] + g * w[1] * w[1]
        if val:
            break
    else:  # pragma: no cover - impossible in odd characteristic
        raise NotCenterCandidate("no anisotropic vector")
    # complete w to a basis with a vector S-orthogonal to it
    Sw = (a * w[0] + b * w[1], b * w[0] + g * w[1])
    w2 = (-Sw[1], Sw[0])
    c = val
    # w2^T S w2 = det * val, so scale w2 by val / sqrt(det * val^2) = 1 / sqrt(det)
    r = F.sqrt(det)
    if r is None:
        raise SquareRootUnavailable(f"det = {F.format(det)} has no square root in {F}")
    s = one / r
    M = ((w[0], w2[0] * s), (w[1], w2[1] * s))
    nf = pullback(omega, M, pt)
    x, y = Poly.var("x", F), Poly.var("y", F)
    if nf.P.truncate(2) != x.scale(c) or nf.Q.truncate(2) != y.scale(c):
        raise SolveFailure("normalization did not produce the expected linear part")
    return NormalForm(nf, c, pt, M)


def center_candidates(omega: DifferentialForm) -> list[tuple]:
    return [pt for pt in equilibria(omega) if is_center_candidate(omega, pt)]


# ---------------------------------------------------------------------------
# focal values
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FocalSequence:
    s: tuple
    F_truncation: Poly
    convention_tag: str
    order: int

    @property
    def all_zero(self) -> bool:
        return not any(self.s)

    def vanishing_pattern(self) -> tuple[bool, ...]:
        return tuple(not v for v in self.s)


def _rotation_matrix(k: int, c, F: Field, with_s: bool, gauge: str) -> tuple[Matrix, list]:
    """Matrix of f -> c (y f_x - x f_y) on degree-k forms (plus the s column
    and the gauge row for even k)."""
    mons = monomials(2, k)
    index = {m: i for i, m in enumerate(mons)}
    cols = []
    for (a, b) in mons:
        col = [F.zero] * (k + 1)
        if a:
            col[index[(a - 1, b + 1)]] = col[index[(a - 1, b + 1)]] + c * a
        if b:
            col[index[(a + 1, b - 1)]] = col[index[(a + 1, b - 1)]] - c * b
        cols.append(col)
    if with_s:
        col = [F.zero] * (k + 1)
        col[index[(k, 0)]] = -F.one
        col[index[(0, k)]] = -F.one
        cols.append(col)
    rows = [list(r) for r in zip(*cols)]
    if with_s:
        gauge_row = [F.zero] * len(cols)
        gauge_row[index[(k, 0)] if gauge == "x" else index[(0, k)]] = F.one
        rows.append(gauge_row)
    return Matrix(F, rows, len(cols)), list(mons)


def focal_values(nf: NormalForm | DifferentialForm, N: int, gauge: str = "x", c=None) -> FocalSequence:
    """s_1, ..., s_N of a normal form (degrees 3 .. 2N + 2 of F)."""
    omega = nf.omega if isinstance(nf, NormalForm) else nf
    F = omega.field
    if c is None:
        c = nf.c if isinstance(nf, NormalForm) else omega.P.coefficient((1, 0))
    char = F.characteristic
    if char and char <= 2 * N + 4:
        raise CharacteristicTooSmall(f"characteristic {char} is too small for N = {N}")
    x, y = Poly.var("x", F), Poly.var("y", F)
    if omega.P.truncate(2) != x.scale(c) or omega.Q.truncate(2) != y.scale(c):
        raise ValueError("form is not in normal form P = c x + ..., Q = c y + ...")
    P, Q = omega.P, omega.Q
    p_parts = {j: P.homogeneous_part(j) for j in range(2, omega.degree + 1)}
    q_parts = {j: Q.homogeneous_part(j) for j in range(2, omega.degree + 1)}
    f = {2: x * x + y * y}
    fx = {2: f[2].diff("x")}
    fy = {2: f[2].diff("y")}
    s = []
    for k in range(3, 2 * N + 3):
        R = Poly.zero(F)
        for m in range(2, k):
            j = k - m + 1
            if j in p_parts:
                R = R + fx[m] * q_parts[j] - fy[m] * p_parts[j]
        even = k % 2 == 0
        M, mons = _rotation_matrix(k, c, F, even, gauge)
        rhs = [-R.coefficient(m) for m in mons]
        if even:
            rhs.append(F.zero)
        try:
            sol, kern = solve(M, rhs)
        except NoSolution as exc:
            raise SolveFailure(f"degree {k} system has no solution") from exc
        if kern:
            raise SolveFailure(f"degree {k} system is not uniquely solvable")
        fk = Poly(F, {m: sol[i] for i, m in enumerate(mons)}, 2)
        f[k], fx[k], fy[k] = fk, fk.diff("x"), fk.diff("y")
        if even:
            s.append(sol[-1])
    total = Poly.zero(F)
    for fk in f.values():
        total = total + fk
    return FocalSequence(tuple(s), total, GAUGE_X if gauge == "x" else GAUGE_Y, N)


def identity_residual(nf: NormalForm | DifferentialForm, seq: FocalSequence) -> Poly:
    """Terms of degree <= 2N + 2 of F_x Q - F_y P - sum s_j (x^(2j+2) + y^(2j+2))."""
    omega = nf.omega if isinstance(nf, NormalForm) else nf
    F = omega.field
    Fp = seq.F_truncation
    lhs = Fp.diff("x") * omega.Q - Fp.diff("y") * omega.P
    x, y = Poly.var("x", F), Poly.var("y", F)
    for j, sj in enumerate(seq.s, start=1):
        lhs = lhs - (x ** (2 * j + 2) + y ** (2 * j + 2)).scale(sj)
    return lhs.truncate(2 * seq.order + 2)


# ---------------------------------------------------------------------------
# first-order variation
# ---------------------------------------------------------------------------


def default_ambient(d: int, F: Field) -> list[tuple[Poly, Poly]]:
    """Monomial perturbations of p and of q in degrees 2..d (14 for d = 3)."""
    dirs = []
    zero = Poly.zero(F)
    for which in ("p", "q"):
        for k in range(2, d + 1):
            for m in monomials(2, k):
                mono = Poly.monomial(m, F.one, F)
                dirs.append((mono, zero) if which == "p" else (zero, mono))
    return dirs


@dataclass(frozen=True)
class FocalJacobian:
    matrix: tuple[tuple, ...]  # N rows, M columns
    rank: int
    ambient_dim: int

    @property
    def tangent_dim(self) -> int:
        return self.ambient_dim - self.rank


def _lift(f: Poly, D: DualNumbers) -> Poly:
    return Poly(D, {m: D(c) for m, c in f.terms.items()}, f.nvars)


def focal_jacobian(
    nf: NormalForm,
    N: int,
    directions: Sequence[tuple[Poly, Poly]] | None = None,
) -> FocalJacobian:
    """ds_j / dtheta_k at the normal form, for the family P + theta_k dP_k,
    Q + theta_k dQ_k, via one dual-number run per direction."""
    F = nf.field
    if not isinstance(F, FiniteField):
        raise ValueError("the focal Jacobian is computed over a finite field")
    if directions is None:
        directions = default_ambient(nf.omega.degree, F)
    D = DualNumbers(F)
    eps = D.eps
    P0, Q0 = _lift(nf.omega.P, D), _lift(nf.omega.Q, D)
    cols = []
    for dP, dQ in directions:
        P = P0 + _lift(dP, D).scale(eps)
        Q = Q0 + _lift(dQ, D).scale(eps)
        deg = max(nf.omega.degree, dP.degree or 0, dQ.degree or 0)
        seq = focal_values(DifferentialForm(P, Q, deg), N, c=D(nf.c))
        cols.append([v.b for v in seq.s])
    rows = [list(r) for r in zip(*cols)]
    J = Matrix(F, rows, len(cols))
    from .linalg import rank

    return FocalJacobian(tuple(tuple(r) for r in rows), rank(J), len(cols))


@dataclass(frozen=True)
class FocalResult:
    point: tuple
    field: Field
    normal_form: NormalForm
    sequence: FocalSequence


def focal_at_prime(omega: DifferentialForm, p: int, N: int = 10, gauge: str = "x") -> list[FocalResult]:
    """Focal values at every GF(p) center candidate of a rational form.

    When det S is not a square in GF(p) the point is embedded in GF(p^2),
    where every element of GF(p) has a square root.
    """
    from .fields import GF

    Fp = GF(p)
    base = omega.map_field(Fp)
    out = []
    for pt in center_candidates(base):
        try:
            nf = normalize_at(base, pt)
            F = Fp
        except SquareRootUnavailable:
            F = GF(p, 2)
            nf = normalize_at(omega.map_field(F), tuple(F(v.v) for v in pt))
        out.append(FocalResult(pt, F, nf, focal_values(nf, N, gauge)))
    return out
