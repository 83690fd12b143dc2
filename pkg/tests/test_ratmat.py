import random
from fractions import Fraction as F

import pytest

from orbitforge.errors import DimensionMismatchError
from orbitforge.ratmat import (
    QMat,
    Subspace,
    kernel_basis,
    rat_from_str,
    rat_to_str,
    rref,
    solve_linear,
    subspace_intersect,
)


def test_rref_rank_one():
    assert rref(QMat([[2, 4], [1, 2]])) == QMat([[1, 2], [0, 0]])


def test_rref_identity():
    for n in (1, 2, 5):
        assert rref(QMat.identity(n)) == QMat.identity(n)


def test_rref_permutation():
    assert rref(QMat([[0, 1], [1, 0]])) == QMat.identity(2)


def test_rref_idempotent_random():
    rng = random.Random(7)
    for _ in range(40):
        rows, cols = rng.randint(1, 7), rng.randint(1, 7)
        m = QMat([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        r = rref(m)
        assert rref(r) == r
        assert r.rows == m.rows and r.cols == m.cols


def test_kernel_zero_matrix():
    k = kernel_basis(QMat.zeros(2, 2))
    assert k.dim == 2 and k == Subspace.full(2)


def test_kernel_identity():
    assert kernel_basis(QMat.identity(3)).dim == 0


def test_kernel_one_equation():
    k = kernel_basis(QMat([[1, 1]]))
    assert k.dim == 1
    assert k.basis == QMat([[1, -1]])


def test_kernel_annihilates_random():
    rng = random.Random(11)
    for _ in range(30):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = QMat([[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)])
        k = kernel_basis(m)
        for v in k.basis.data:
            assert all(
                sum(m.data[i][j] * v[j] for j in range(cols)) == 0 for i in range(rows)
            )


def test_intersect_coordinate_planes():
    a = Subspace.from_rows(3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace.from_rows(3, [[0, 1, 0], [0, 0, 1]])
    got = subspace_intersect(a, b)
    assert got == Subspace.from_rows(3, [[0, 1, 0]])


def test_intersect_idempotent_and_zero():
    a = Subspace.from_rows(3, [[1, 2, 3], [0, 1, 1]])
    assert subspace_intersect(a, a) == a
    e1 = Subspace.from_rows(2, [[1, 0]])
    e2 = Subspace.from_rows(2, [[0, 1]])
    assert subspace_intersect(e1, e2).dim == 0


def test_intersect_lattice_laws_random():
    rng = random.Random(13)
    dim = 16
    for _ in range(8):
        a, b, c = (
            Subspace.from_rows(
                dim,
                [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(rng.randint(0, 7))],
            )
            for _ in range(3)
        )
        assert subspace_intersect(a, b) == subspace_intersect(b, a)
        assert subspace_intersect(subspace_intersect(a, b), c) == subspace_intersect(
            a, subspace_intersect(b, c)
        )
        # dimension law against the sum
        ab = subspace_intersect(a, b)
        assert ab.dim == a.dim + b.dim - a.sum(b).dim


def test_intersect_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        subspace_intersect(Subspace.full(2), Subspace.full(3))


def test_solve_identity():
    assert solve_linear(QMat.identity(3), [1, 2, 3]) == (F(1), F(2), F(3))


def test_solve_underdetermined_residual():
    m = QMat([[1, 1]])
    x = solve_linear(m, [2])
    assert x is not None and x[0] + x[1] == 2


def test_solve_inconsistent():
    assert solve_linear(QMat([[1], [1]]), [0, 1]) is None


def test_rat_json_roundtrip():
    assert rat_to_str(F(3, 4)) == "3/4"
    assert rat_to_str(F(-5)) == "-5"
    assert rat_from_str("7/2") == F(7, 2)
    m = QMat([[F(1, 2), 3], [0, F(-4, 5)]])
    assert QMat.from_json_obj(m.to_json_obj()) == m


def test_subspace_equality_is_structural():
    a = Subspace.from_rows(3, [[2, 0, 2], [0, 3, 0]])
    b = Subspace.from_rows(3, [[1, 0, 1], [0, 1, 0]])
    assert a == b
    assert a.pivots == (0, 1)
