"""Exact dense linear algebra over any supported field.

Over QQ the elimination is fraction-free (Bareiss) on integer rows; over
GF(p) it runs on plain ints; every other field (GF(p^k), dual numbers) goes
through a generic Gauss-Jordan using the element operators.  Pivots are always
the first usable entry in column order, so results are reproducible.

:class:`SparseEchelon` is a separate incremental rank accumulator for the large,
very sparse Macaulay-type matrices built from monomial multiples.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence

from .errors import ArityMismatch, DualPivotFailure, NoSolution
from .fields import QQ, DualNumbers, Field, PrimeField


class Matrix:
    """Immutable dense matrix over a field (``ExactMatrix``)."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(v) for v in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != ncols for r in self.rows):
            raise ArityMismatch("matrix rows have different lengths")
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> Matrix:
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> Matrix:
        return Matrix(self.field, [list(c) for c in zip(*self.rows)] if self.rows else [], self.nrows)

    def apply(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ArityMismatch("vector length does not match column count")
        F = self.field
        out = []
        for r in self.rows:
            s = F.zero
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> list[list]:
        return nullspace(self)

    def solve(self, b: Sequence):
        return solve(self, b)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows and self.ncols == other.ncols

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


# ---------------------------------------------------------------------------
# row reduction kernels.  Each returns (reduced rows, pivot columns) where the
# reduced rows are in reduced row echelon form with pivot entries equal to 1
# (as field elements).
# ---------------------------------------------------------------------------


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free forward elimination on integer rows (modified in place)."""
    prev = 1
    r = 0
    n = len(rows)
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        pc = pr[c]
        for i in range(r + 1, n):
            row = rows[i]
            a = row[c]
            if a:
                for j in range(c + 1, ncols):
                    row[j] = (row[j] * pc - a * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = row[j] * pc // prev
            row[c] = 0
        prev = pc
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows[:r], pivots


def _rref_rational(rows: Sequence[Sequence[Fraction]], ncols: int):
    int_rows = []
    for row in rows:
        den = lcm(*(Fraction(v).denominator for v in row)) if row else 1
        int_rows.append([int(Fraction(v) * den) for v in row])
    ech, pivots = _bareiss_echelon(int_rows, ncols)
    # back substitution in QQ to reach reduced form
    red: list[list[Fraction]] = []
    for i in range(len(ech) - 1, -1, -1):
        pc = pivots[i]
        inv = Fraction(1, ech[i][pc])
        row = [Fraction(v) * inv if v else Fraction(0) for v in ech[i]]
        for lower, lc in zip(red, pivots[i + 1 :]):
            f = row[lc]
            if f:
                row = [a - f * b if b else a for a, b in zip(row, lower)]
        red.insert(0, row)
    return red, pivots


def _rref_prime(rows: Sequence[Sequence[int]], ncols: int, p: int):
    rows = [[v % p for v in r] for r in rows]
    r = 0
    n = len(rows)
    pivots = []
    for c in range(ncols):
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        pr = [v * inv % p for v in rows[r]]
        rows[r] = pr
        for i in range(n):
            if i != r:
                a = rows[i][c]
                if a:
                    rows[i] = [(x - a * y) % p for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows[:r], pivots


def _rref_generic(rows: Sequence[Sequence], ncols: int, field: Field):
    rows = [list(r) for r in rows]
    dual = isinstance(field, DualNumbers)
    r = 0
    n = len(rows)
    pivots = []
    for c in range(ncols):
        if dual:
            piv = next((i for i in range(r, n) if rows[i][c].a), None)
            if piv is None and any(rows[i][c] for i in range(r, n)):
                raise DualPivotFailure(f"column {c} has no entry with invertible eps-free part")
        else:
            piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.one / rows[r][c]
        pr = [v * inv if v else v for v in rows[r]]
        rows[r] = pr
        for i in range(n):
            if i != r:
                a = rows[i][c]
                if a:
                    rows[i] = [x - a * y if y else x for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows[:r], pivots


def rref(M: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    F = M.field
    if F == QQ:
        return _rref_rational(M.rows, M.ncols)
    if isinstance(F, PrimeField):
        red, piv = _rref_prime([[v.v for v in r] for r in M.rows], M.ncols, F.p)
        return [[F(v) for v in r] for r in red], piv
    return _rref_generic(M.rows, M.ncols, F)


def rank(M: Matrix) -> int:
    F = M.field
    if F == QQ:
        int_rows = []
        for row in M.rows:
            den = lcm(*(v.denominator for v in row)) if row else 1
            int_rows.append([int(v * den) for v in row])
        return len(_bareiss_echelon(int_rows, M.ncols)[1])
    return len(rref(M)[1])


def nullspace(M: Matrix) -> list[list]:
    """Basis of the right kernel: one vector per free column, with a 1 there."""
    F = M.field
    red, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [F.zero] * M.ncols
        v[f] = F.one
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(M: Matrix, b: Sequence) -> tuple[list, list[list]]:
    """Particular solution (free variables zero) and kernel basis of ``M v = b``."""
    F = M.field
    if len(b) != M.nrows:
        raise ArityMismatch("right-hand side length does not match row count")
    aug = Matrix(F, [list(r) + [F(bi)] for r, bi in zip(M.rows, b)], M.ncols + 1)
    red, pivots = rref(aug)
    if M.ncols in pivots:
        raise NoSolution("inconsistent linear system")
    x = [F.zero] * M.ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x, nullspace(M)


def determinant(M: Matrix):
    if M.nrows != M.ncols:
        raise ArityMismatch("determinant of a non-square matrix")
    F = M.field
    n = M.nrows
    if n == 0:
        return F.one
    if F == QQ:
        den = 1
        int_rows = []
        for row in M.rows:
            d = lcm(*(v.denominator for v in row))
            den *= d
            int_rows.append([int(v * d) for v in row])
        # track swaps: rerun Bareiss with sign bookkeeping
        rows = int_rows
        sign, prev = 1, 1
        for c in range(n):
            piv = next((i for i in range(c, n) if rows[i][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                sign = -sign
            pc = rows[c][c]
            for i in range(c + 1, n):
                a = rows[i][c]
                for j in range(c + 1, n):
                    rows[i][j] = (rows[i][j] * pc - a * rows[c][j]) // prev
                rows[i][c] = 0
            prev = pc
        return Fraction(sign * rows[-1][-1], den)
    rows = [list(r) for r in M.rows]
    det = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if F.is_invertible(rows[i][c])), None)
        if piv is None:
            if isinstance(F, DualNumbers) and any(rows[i][c] for i in range(c, n)):
                raise DualPivotFailure("no invertible pivot")
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        pc = rows[c][c]
        det = det * pc
        inv = F.one / pc
        for i in range(c + 1, n):
            a = rows[i][c] * inv
            if a:
                rows[i] = [x - a * y for x, y in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# sparse incremental echelon form
# ---------------------------------------------------------------------------


class SparseEchelon:
    """Incremental rank of sparse rows ``{column_key: value}``.

    Every stored row has a distinct leading column, the smallest key under
    ``rank_of`` (a dict mapping keys to integers; lower means preferred
    pivot).  New rows are top-reduced against the stored ones; only the rank
    and the set of leading columns are tracked.
    """

    def __init__(self, field: Field, rank_of: dict[Hashable, int]):
        self.field = field
        self.rank_of = rank_of
        self.pivots: dict[int, dict[int, object]] = {}
        self._mode = "qq" if field == QQ else ("fp" if isinstance(field, PrimeField) else "gen")
        self._p = getattr(field, "p", None)

    def _prepare(self, row: dict) -> dict[int, object]:
        ro = self.rank_of
        if self._mode == "qq":
            den = lcm(*(v.denominator for v in row.values())) if row else 1
            out = {ro[k]: int(v * den) for k, v in row.items() if v}
            g = gcd(*out.values()) if out else 1
            return {k: v // g for k, v in out.items()} if g > 1 else out
        if self._mode == "fp":
            return {ro[k]: v.v for k, v in row.items() if v}
        return {ro[k]: v for k, v in row.items() if v}

    def add(self, row: dict) -> bool:
        """Insert a row; returns True when it increased the rank."""
        return self.add_prepared(self._prepare(row))

    def add_prepared(self, r: dict[int, object]) -> bool:
        """Insert a row already keyed by column rank (ints over QQ and GF(p))."""
        mode, p, piv = self._mode, self._p, self.pivots
        if mode == "fp":
            r = {k: v % p for k, v in r.items() if v % p}
        while r:
            lead = min(r)
            pr = piv.get(lead)
            if pr is None:
                if mode == "fp":
                    inv = pow(r[lead], -1, p)
                    r = {k: v * inv % p for k, v in r.items()}
                elif mode == "gen":
                    inv = self.field.one / r[lead]
                    r = {k: v * inv for k, v in r.items()}
                piv[lead] = r
                return True
            a = r[lead]
            if mode == "qq":
                b = pr[lead]
                g = gcd(a, b)
                fa, fb = b // g, a // g
                new = {k: v * fa for k, v in r.items()}
                for k, v in pr.items():
                    w = new.get(k, 0) - fb * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                if new:
                    g = gcd(*new.values())
                    if g > 1:
                        new = {k: v // g for k, v in new.items()}
                r = new
            elif mode == "fp":
                for k, v in pr.items():
                    w = (r.get(k, 0) - a * v) % p
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
            else:
                for k, v in pr.items():
                    w = r.get(k, self.field.zero) - a * v
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
        return False

    def extend(self, rows: Iterable[dict]) -> SparseEchelon:
        for row in rows:
            self.add(row)
        return self

    @property
    def rank(self) -> int:
        return len(self.pivots)
