"""The inverse problem: which forms of degree d admit a given integral curve.

Everything here runs on homogeneous polynomials in (x, y, z); affine input is
homogenized to its own degree on entry.  Forms are ``P dx + Q dy`` with P, Q
homogeneous of degree d (no dz part).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import (
    CommonComponent,
    ComponentAtInfinity,
    NotDivisible,
    NotFinite,
    NotIntegralCurve,
    NotSquareFree,
)
from .fields import QQ, Field, PrimeField
from .linalg import Matrix, SparseEchelon, nullspace, rank, rref
from .poly import DifferentialForm, Poly, TwoForm, monomials, wedge_with_dC


@dataclass(frozen=True)
class Curve:
    """A named plane curve; ``poly`` may be affine or projective."""

    poly: Poly
    name: str = "C"

    @property
    def degree(self) -> int:
        return self.poly.degree

    @property
    def projective(self) -> Poly:
        return as_projective(self.poly)

    @property
    def field(self) -> Field:
        return self.poly.field


def _poly(C) -> Poly:
    return C.poly if isinstance(C, Curve) else C


def as_projective(C) -> Poly:
    C = _poly(C)
    return C if C.nvars == 3 else C.homogenize()


def as_projective_form(omega: DifferentialForm) -> DifferentialForm:
    return omega.homogenize()


def product_curve(curves: Sequence, name: str = "U") -> Curve:
    polys = [_poly(c) for c in curves]
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return Curve(out, name)


def hamiltonian_dim(d: int, e: int) -> int:
    """``binom(d - e + 3, 2)``, and 0 when e > d + 1."""
    return comb(d - e + 3, 2) if e <= d + 1 else 0


def expected_dimension(d: int, e: int, deg_X: int) -> int:
    return hamiltonian_dim(d, e) + comb(d + 1, 2) - (e - 1) ** 2 + deg_X


def deg_X_from_local_data(affine_tjurinas: Sequence[int], infinity_tzs: Sequence[int]) -> int:
    return sum(affine_tjurinas) + sum(infinity_tzs)


# ---------------------------------------------------------------------------
# integral curves
# ---------------------------------------------------------------------------


def _match(C: Poly, omega: DifferentialForm) -> tuple[Poly, DifferentialForm]:
    if C.nvars == omega.P.nvars:
        return C, omega
    return as_projective(C), omega.homogenize()


def is_integral_curve(C, omega: DifferentialForm) -> TwoForm | None:
    """Cofactor K with ``C_x Q - C_y P = C K``, or None.

    A projective curve and an affine form (or vice versa) are compared in the
    projective setting.
    """
    C, omega = _match(_poly(C), omega)
    w = wedge_with_dC(C, omega).coefficient
    try:
        return TwoForm(w.exact_div(C))
    except NotDivisible:
        return None


def cofactor(C, omega: DifferentialForm) -> Poly:
    K = is_integral_curve(C, omega)
    if K is None:
        raise NotIntegralCurve(f"{_name(C)} is not an integral curve of the form")
    return K.coefficient


def _name(C) -> str:
    return C.name if isinstance(C, Curve) else str(C)


def union_integral_curve_check(curves: Sequence, omega: DifferentialForm) -> bool:
    """Integrality of the product, computed directly and factor by factor.

    The two answers must agree, and when they are positive the cofactor of the
    product must be the sum of the cofactors.
    """
    polys = [as_projective(c) for c in curves]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if not intersection_is_finite(polys[i], polys[j]):
                raise CommonComponent(f"curves {i} and {j} share a component")
    hom = omega.homogenize()
    parts = [is_integral_curve(p, hom) for p in polys]
    whole = is_integral_curve(product_curve(polys).poly, hom)
    each = all(k is not None for k in parts)
    if each != (whole is not None):
        raise AssertionError("product and factor-wise integrality disagree")
    if each:
        total = parts[0].coefficient
        for k in parts[1:]:
            total = total + k.coefficient
        if total != whole.coefficient:
            raise AssertionError("cofactor of a union is not the sum of cofactors")
    return each


# ---------------------------------------------------------------------------
# Hilbert functions
# ---------------------------------------------------------------------------


def _int_gens(gens: Sequence[Poly]) -> list[Poly]:
    out = []
    for g in gens:
        if g:
            out.append(g.clear_denominators() if g.field == QQ else g)
    return out


@lru_cache(maxsize=None)
def _rank_index(degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials(3, degree))}


def ideal_slice_rank(gens: Sequence[Poly], k: int) -> int:
    """Rank of the degree-k part of the ideal generated by homogeneous ``gens``."""
    gens = _int_gens(gens)
    if not gens:
        return 0
    F = gens[0].field
    index = _rank_index(k)
    ech = SparseEchelon(F, index)
    for g in gens:
        dg = g.degree
        if dg > k:
            continue
        terms = list(g.terms.items())
        if F == QQ:
            terms = [(m, int(c)) for m, c in terms]
        elif isinstance(F, PrimeField):
            terms = [(m, c.v) for m, c in terms]
        for mono in monomials(3, k - dg):
            row = {index[(m[0] + mono[0], m[1] + mono[1], m[2] + mono[2])]: c for m, c in terms}
            ech.add_prepared(row)
    return ech.rank


@dataclass(frozen=True)
class HilbertRun:
    values: tuple[int, ...]
    stable_value: int | None
    stabilization_degree: int | None


def hilbert_function(gens: Sequence[Poly], cutoff: int, run: int = 4, start: int = 0) -> HilbertRun:
    """Values of ``k -> dim S_k / I_k`` up to ``cutoff``, stopping after ``run``
    consecutive equal values (at or beyond ``start``)."""
    values: list[int] = []
    for k in range(cutoff + 1):
        values.append(comb(k + 2, 2) - ideal_slice_rank(gens, k))
        tail = values[-run:]
        if len(tail) == run and k - run + 1 >= start and len(set(tail)) == 1:
            return HilbertRun(tuple(values), tail[0], k - run + 1)
    return HilbertRun(tuple(values), None, None)


def intersection_is_finite(f: Poly, g: Poly) -> bool:
    """True iff the projective curves f = 0 and g = 0 share no component."""
    f, g = as_projective(f), as_projective(g)
    e = max(f.degree, g.degree)
    run = hilbert_function([f, g], 3 * e + 6, start=f.degree + g.degree - 1)
    return run.stable_value is not None


# ---------------------------------------------------------------------------
# deg X and linkage
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkageDegrees:
    deg_X: int
    deg_Y: int
    e: int
    stabilization_degree: int
    hilbert_values: tuple[int, ...] = field(default=(), compare=False)


def has_component_at_infinity(C) -> bool:
    C = as_projective(C)
    return all(m[2] >= 1 for m in C.terms)


@lru_cache(maxsize=64)
def _deg_X_cached(C: Poly) -> LinkageDegrees:
    e = C.degree
    gens = [C, C.diff("x"), C.diff("y")]
    run = hilbert_function(gens, 3 * e + 6, start=e - 1)
    if run.stable_value is None:
        raise NotFinite(
            f"Hilbert function of (C, C_x, C_y) did not stabilize by degree {3 * e + 6}: "
            f"values {list(run.values)}"
        )
    return LinkageDegrees(run.stable_value, (e - 1) ** 2 - run.stable_value, e, run.stabilization_degree, run.values)


def deg_X(C) -> LinkageDegrees:
    """Degree of X = V(C, C_x, C_y) from the stable Hilbert function."""
    C = as_projective(C)
    if has_component_at_infinity(C):
        raise ComponentAtInfinity("z divides the curve")
    return _deg_X_cached(C)


def is_square_free(C) -> bool:
    """Square-free test through finiteness of X (components at infinity are split off)."""
    C = as_projective(C)
    z = Poly.var("z", C.field, 3)
    while has_component_at_infinity(C):
        C = C.exact_div(z)
        if has_component_at_infinity(C):
            return False
    if C.degree == 0:
        return True
    try:
        _deg_X_cached(C)
    except NotFinite:
        return False
    return True


def _require_square_free(C: Poly):
    if not is_square_free(C):
        raise NotSquareFree("curve has a multiple factor")


# ---------------------------------------------------------------------------
# the Darboux kernel
# ---------------------------------------------------------------------------


def _coeff_rows(target_degree: int) -> dict:
    return _rank_index(target_degree)


def _column(poly: Poly, mono, index: dict, F: Field, nrows: int) -> list:
    col = [F.zero] * nrows
    for m, c in poly.terms.items():
        col[index[(m[0] + mono[0], m[1] + mono[1], m[2] + mono[2])]] = c
    return col


def _system(blocks: Sequence[tuple[Poly, int]], target: int, F: Field) -> Matrix:
    """Matrix of ``sum_i g_i * U_i`` restricted to degree ``target``; the unknown
    U_i runs over the monomials of degree ``deg_i``."""
    index = _coeff_rows(target)
    nrows = len(index)
    cols = []
    for g, deg in blocks:
        for mono in monomials(3, deg):
            cols.append(_column(g, mono, index, F, nrows) if g else [F.zero] * nrows)
    return Matrix(F, [list(r) for r in zip(*cols)] if cols else [], len(cols))


def _assemble(vec: Sequence, degrees: Sequence[int], F: Field) -> list[Poly]:
    out = []
    pos = 0
    for deg in degrees:
        mons = monomials(3, deg)
        out.append(Poly(F, {m: vec[pos + i] for i, m in enumerate(mons)}, 3))
        pos += len(mons)
    return out


@dataclass(frozen=True)
class KernelElement:
    """One basis vector ``(Q, -P, -K)`` of the Darboux kernel."""

    Q: Poly
    minus_P: Poly
    minus_K: Poly

    @property
    def form(self) -> DifferentialForm:
        return DifferentialForm(-self.minus_P, self.Q, max(self.Q.degree or 0, self.minus_P.degree or 0, 1))

    @property
    def cofactor(self) -> Poly:
        return -self.minus_K

    @property
    def is_hamiltonian(self) -> bool:
        return not self.minus_K


@dataclass(frozen=True)
class KernelSpace:
    degree: int
    basis: tuple[KernelElement, ...]
    dim: int
    hamiltonian_dim: int
    hamiltonian_dim_computed: int
    hamiltonian_flags: tuple[bool, ...]


def kernel_space(C, d: int, check_square_free: bool = True) -> KernelSpace:
    """V_C(d): the kernel of the Darboux matrix (C_x, C_y, C) in degree d."""
    C = as_projective(C)
    if check_square_free:
        _require_square_free(C)
    e = C.degree
    F = C.field
    target = d + e - 1
    M = _system([(C.diff("x"), d), (C.diff("y"), d), (C, d - 1)], target, F)
    basis = []
    for v in nullspace(M):
        Q, mP, mK = _assemble(v, [d, d, d - 1], F)
        basis.append(KernelElement(Q, mP, mK))
    k_rank = rank(Matrix(F, [v.minus_K.coefficient_vector(monomials(3, d - 1)) for v in basis], comb(d + 1, 2))) if basis else 0
    return KernelSpace(
        degree=d,
        basis=tuple(basis),
        dim=len(basis),
        hamiltonian_dim=hamiltonian_dim(d, e),
        hamiltonian_dim_computed=len(basis) - k_rank,
        hamiltonian_flags=tuple(b.is_hamiltonian for b in basis),
    )


@dataclass(frozen=True)
class CofactorSlice:
    degree: int
    dim: int
    basis: tuple[Poly, ...]


def cofactor_ideal_slice(C, k: int) -> CofactorSlice:
    """Degree-k part of the ideal of cofactors ``(C_x, C_y) : C``."""
    C = as_projective(C)
    if has_component_at_infinity(C):
        raise ComponentAtInfinity("z divides the curve")
    _require_square_free(C)
    F = C.field
    if k < 0:
        return CofactorSlice(k, 0, ())
    e = C.degree
    # K*C - A*C_x - B*C_y = 0 with deg A = deg B = k + 1
    M = _system([(C, k), (-C.diff("x"), k + 1), (-C.diff("y"), k + 1)], k + e, F)
    nk = comb(k + 2, 2)
    ks = [v[:nk] for v in nullspace(M)]
    if not ks:
        return CofactorSlice(k, 0, ())
    red, piv = rref(Matrix(F, ks, nk))
    mons = monomials(3, k)
    basis = tuple(Poly(F, {m: r[i] for i, m in enumerate(mons)}, 3) for r in red)
    return CofactorSlice(k, len(basis), basis)


def dimension_formula_check(C, d: int) -> tuple[bool, dict]:
    """dim V_C(d) = dim V^H_C(d) + dim ((C_x, C_y) : C)_{d-1}, both sides computed."""
    C = as_projective(C)
    V = kernel_space(C, d)
    S = cofactor_ideal_slice(C, d - 1)
    lhs = V.dim
    rhs = hamiltonian_dim(d, C.degree) + S.dim
    return lhs == rhs, {"dim_V": lhs, "hamiltonian": hamiltonian_dim(d, C.degree), "cofactor_slice": S.dim}


# ---------------------------------------------------------------------------
# pointwise genericity checks
# ---------------------------------------------------------------------------


def curve_rigidity(omega: DifferentialForm, C, K=None) -> int:
    """Dimension of first-order deformations (c, kappa) of the pair (C, K):
    ``c_x Q - c_y P - c K - C kappa = 0``.  The value 1 means rigid up to scale."""
    C = as_projective(C)
    hom = omega.homogenize()
    K0 = cofactor(C, hom)
    if K is not None:
        Kp = K.coefficient if isinstance(K, TwoForm) else K
        Kp = Kp if Kp.nvars == 3 else Kp.homogenize(hom.degree - 1)
        if Kp != K0:
            raise NotIntegralCurve("supplied cofactor does not match the form")
    F = C.field
    e, d = C.degree, hom.degree
    P, Q = hom.P, hom.Q
    target = d + e - 1
    index = _coeff_rows(target)
    nrows = len(index)
    cols = []
    for mono in monomials(3, e):
        c = Poly(F, {mono: F.one}, 3)
        g = c.diff("x") * Q - c.diff("y") * P - c * K0
        col = [F.zero] * nrows
        for m, v in g.terms.items():
            col[index[m]] = v
        cols.append(col)
    for mono in monomials(3, d - 1):
        cols.append(_column(-C, mono, index, F, nrows))
    M = Matrix(F, [list(r) for r in zip(*cols)], len(cols))
    return len(cols) - rank(M)


def _projective_point(pt: Sequence, F: Field) -> list:
    pt = [F(v) for v in pt]
    return pt + [F.one] if len(pt) == 2 else pt


def genericity_points_condition(points: Sequence[Sequence], k: int, field: Field = QQ) -> bool:
    """True iff the points impose independent conditions on degree-k forms
    (when there are at least as many points as forms: no form vanishes on all)."""
    pts = [_projective_point(p, field) for p in points]
    mons = monomials(3, k)
    rows = []
    for p in pts:
        row = []
        for m in mons:
            v = field.one
            for xi, ei in zip(p, m):
                if ei:
                    v = v * xi**ei
            row.append(v)
        rows.append(row)
    if not rows:
        return True
    return rank(Matrix(field, rows, len(mons))) == min(len(pts), len(mons))
