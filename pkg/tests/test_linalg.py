import random
from fractions import Fraction

import pytest

from darbouxkit import GF, QQ, DualNumbers
from darbouxkit.errors import DualPivotFailure, NoSolution
from darbouxkit.linalg import Matrix, SparseEchelon, determinant, nullspace, rank, rref, solve


def _mat(F, rows):
    return Matrix(F, [[F(v) if not isinstance(v, Fraction) else F.from_fraction(v) for v in r] for r in rows], len(rows[0]))


def test_rank_and_nullspace_over_q():
    M = _mat(QQ, [[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert rank(M) == 2
    (v,) = nullspace(M)
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.rows)


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, 8]]
    assert rank(_mat(QQ, rows)) == 2
    assert rank(_mat(GF(7), rows)) == 1


def test_solve_and_no_solution():
    M = _mat(QQ, [[1, 1], [1, -1]])
    x, kern = solve(M, [QQ(3), QQ(1)])
    assert list(x) == [2, 1] and not kern
    with pytest.raises(NoSolution):
        solve(_mat(QQ, [[1, 1], [2, 2]]), [QQ(1), QQ(3)])


def test_determinant_matches_bareiss_example():
    M = _mat(QQ, [[2, 3, 1], [4, 1, -3], [Fraction(1, 2), 2, 5]])
    assert determinant(M) == Fraction(-35, 1)


def test_rref_pivots():
    red, piv = rref(_mat(GF(5), [[0, 2, 4], [1, 1, 1]]))
    assert list(piv) == [0, 1]


def test_random_rank_consistency():
    rng = random.Random(7)
    for _ in range(10):
        A = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(4)]
        B = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)]
        prod = [[sum(B[i][k] * A[k][j] for k in range(4)) for j in range(6)] for i in range(3)]
        assert rank(_mat(QQ, prod)) <= min(rank(_mat(QQ, A)), rank(_mat(QQ, B)))


def test_dual_pivot_failure():
    D = DualNumbers(GF(11))
    M = Matrix(D, [[D.eps, D.one], [D.eps * 2, D.one]], 2)
    with pytest.raises(DualPivotFailure):
        rank(M)


def test_sparse_echelon_matches_dense():
    rng = random.Random(3)
    rows = [[rng.choice([0, 0, 1, 2, -1]) for _ in range(8)] for _ in range(10)]
    ech = SparseEchelon(QQ, {i: i for i in range(8)})
    for r in rows:
        ech.add_prepared({i: v for i, v in enumerate(r) if v})
    assert ech.rank == rank(_mat(QQ, rows))
