import random
from fractions import Fraction as F

import pytest

from orbitforge._rng import stream
from orbitforge.errors import NotNilpotentError, UnsupportedSpectrumError
from orbitforge.jmtriple import (
    canonical_parabolic,
    canonical_parabolic_of_element,
    graded_decomposition,
    jm_triple,
    jordan_chains,
)
from orbitforge.liecore import (
    GroupContext,
    bracket,
    nilpotent_exp,
    partitions_of,
)
from orbitforge.ratmat import QMat, Subspace

J3 = QMat([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def canonical_nilpotent(parts):
    n = sum(parts)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for k in parts:
        for i in range(k - 1):
            rows[off + i][off + i + 1] = 1
        off += k
    return QMat(rows)


def random_nilpotent(rng, n):
    parts = partitions_of(n)
    p = parts[rng.randrange(len(parts))]
    x = canonical_nilpotent(p.parts)
    while True:
        g = QMat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if g.det() != 0:
            return g * x * g.inverse()


def unit_flat(n, i, j):
    return [1 if k == i * n + j else 0 for k in range(n * n)]


def test_zero_matrix_triple():
    t = jm_triple(QMat.zeros(3, 3))
    assert t.h.is_zero() and t.y.is_zero()


def test_gl2_triple():
    t = jm_triple(QMat([[0, 1], [0, 0]]))
    assert t.h == QMat.diag([1, -1])
    assert t.y == QMat([[0, 0], [1, 0]])


def test_regular_gl3_triple():
    t = jm_triple(J3)
    assert t.h == QMat.diag([2, 0, -2])
    assert t.y == QMat([[0, 0, 0], [2, 0, 0], [0, 2, 0]])


def test_triple_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        jm_triple(QMat.identity(2))


def test_triple_relations_all_partitions():
    rng = random.Random(2)
    for n in range(1, 6):
        for p in partitions_of(n):
            jm_triple(canonical_nilpotent(p.parts)).validate()
        for _ in range(5):
            jm_triple(random_nilpotent(rng, n)).validate()


def test_jordan_chains_form_basis():
    rng = random.Random(4)
    for n in range(2, 6):
        x = random_nilpotent(rng, n)
        chains = jordan_chains(x, stream(0, "chains", n))
        vecs = [v for c in chains for v in c]
        assert Subspace.from_rows(n, vecs).dim == n


def test_grading_gl2():
    g = graded_decomposition(QMat.diag([1, -1]))
    assert g.level(2).basis == QMat([unit_flat(2, 0, 1)])
    assert g.level(-2).basis == QMat([unit_flat(2, 1, 0)])
    assert g.level(0).dim == 2


def test_grading_zero():
    g = graded_decomposition(QMat.zeros(2, 2))
    assert g.level(0).dim == 4 and len(g.levels) == 1


def test_grading_gl3_weights():
    g = graded_decomposition(QMat.diag([2, 0, -2]))
    assert g.level(2).dim == 2  # E12, E23
    assert g.level(4).dim == 1  # E13
    assert g.level(0).dim == 3
    assert g.level(-2).dim == 2 and g.level(-4).dim == 1


def test_grading_rejects_non_integer():
    with pytest.raises(UnsupportedSpectrumError):
        graded_decomposition(QMat.diag([F(1, 2), 0]))


def test_parabolic_zero_triple():
    pd = canonical_parabolic(jm_triple(QMat.zeros(3, 3)))
    assert pd.q.dim == 9 and pd.u.dim == 0 and pd.uprime.dim == 0


def test_parabolic_regular_gl2():
    pd = canonical_parabolic(jm_triple(QMat([[0, 1], [0, 0]])))
    assert pd.q == Subspace.from_rows(4, [unit_flat(2, 0, 0), unit_flat(2, 0, 1), unit_flat(2, 1, 1)])
    assert pd.u == Subspace.from_rows(4, [unit_flat(2, 0, 1)])
    assert pd.uprime.dim == 0


def test_parabolic_regular_gl3():
    pd = canonical_parabolic(jm_triple(J3))
    upper = [unit_flat(3, i, j) for i in range(3) for j in range(3) if j >= i]
    assert pd.q == Subspace.from_rows(9, upper)
    strict = [unit_flat(3, i, j) for i in range(3) for j in range(3) if j > i]
    assert pd.u == Subspace.from_rows(9, strict)
    assert pd.uprime == Subspace.from_rows(9, [unit_flat(3, 0, 2)])


def test_parabolic_independence_of_h():
    rng = random.Random(6)
    for n in range(2, 6):
        for t in range(4):
            x = random_nilpotent(rng, n)
            pa = canonical_parabolic(jm_triple(x, stream(1, "a", n, t)))
            pb = canonical_parabolic(jm_triple(x, stream(1, "b", n, t)))
            assert pa.q == pb.q and pa.u == pb.u and pa.uprime == pb.uprime


def test_parabolic_of_semisimple_regular():
    pd = canonical_parabolic_of_element(QMat.diag([1, 2, 3]))
    assert pd.q.dim == 9


def test_parabolic_of_unipotent_subregular():
    g = nilpotent_exp(QMat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    pd = canonical_parabolic_of_element(g)
    # H has distinct eigenvalues 1, 0, -1 so q is a Borel
    assert pd.q.dim == 6


def test_parabolic_of_mixed_element():
    g = QMat.diag([1, 1, 2]) * nilpotent_exp(QMat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]))
    pd = canonical_parabolic_of_element(g)
    assert pd.u == Subspace.from_rows(9, [unit_flat(3, 0, 1)])
    assert pd.q.dim == 6


def test_q_is_self_normalizing():
    rng = random.Random(8)
    ctx_cases = [(2, (2,)), (3, (2, 1)), (3, (3,)), (4, (2, 2))]
    from orbitforge.ratmat import kernel_basis

    for n, parts in ctx_cases:
        x = canonical_nilpotent(parts)
        pd = canonical_parabolic(jm_triple(x))
        ctx = GroupContext(n)
        q_mats = [ctx.unflatten(r) for r in pd.q.basis.data]
        cols = []
        for i in range(n * n):
            e = ctx.unflatten([1 if k == i else 0 for k in range(n * n)])
            col = []
            for qm in q_mats:
                col.extend(pd.q.reduce(bracket(e, qm).flatten()))
            cols.append(col)
        norm_coeffs = kernel_basis(QMat(cols).transpose())
        rows = []
        for cvec in norm_coeffs.basis.data:
            acc = [F(0)] * (n * n)
            for idx, cf in enumerate(cvec):
                if cf:
                    acc[idx] += cf
            rows.append(acc)
        assert Subspace.from_rows(n * n, rows) == pd.q


def test_grading_symmetry_and_surjectivity():
    rng = random.Random(10)
    for n in range(2, 6):
        x = random_nilpotent(rng, n)
        t = jm_triple(x)
        g = graded_decomposition(t.h)
        ctx = GroupContext(n)
        for k in g.levels:
            assert g.level(k).dim == g.level(-k).dim
        image = Subspace.from_rows(
            n * n, [bracket(t.x, ctx.unflatten(r)).flatten() for r in g.level(0).basis.data]
        )
        assert image.contains(g.level(2))
