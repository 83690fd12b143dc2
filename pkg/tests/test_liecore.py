import random
from fractions import Fraction as F

import pytest

from orbitforge.errors import (
    NotNilpotentError,
    SingularMatrixError,
    UnsupportedSpectrumError,
)
from orbitforge.liecore import (
    Partition,
    ad_matrix,
    additive_jc,
    bracket,
    centralizer_dim,
    centralizer_dim_formula,
    char_poly,
    compositions_of,
    jordan_type,
    mult_jc,
    nilpotent_exp,
    nilpotent_log,
    partitions_of,
    rational_roots,
)
from orbitforge.ratmat import QMat

E12 = QMat([[0, 1], [0, 0]])
E21 = QMat([[0, 0], [1, 0]])
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


def random_invertible(rng, n, bound=3):
    while True:
        m = QMat([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def test_bracket_matrix_units():
    assert bracket(E12, E21) == QMat.diag([1, -1])
    assert bracket(QMat.diag([1, -1]), E12) == E12.scale(2)
    m = QMat([[1, 2], [3, 4]])
    assert bracket(m, m).is_zero()


def test_ad_eigenvalues_via_char_poly():
    ad = ad_matrix(QMat.diag([1, -1]))
    roots = rational_roots(char_poly(ad))
    assert roots == {F(2): 1, F(0): 2, F(-2): 1}


def test_ad_of_center_and_zero():
    assert ad_matrix(QMat.zeros(2, 2)).is_zero()
    assert ad_matrix(QMat.identity(3)).is_zero()


def test_jordan_type_examples():
    assert jordan_type(QMat.zeros(3, 3)) == Partition((1, 1, 1))
    assert jordan_type(J3) == Partition((3,))
    e12_gl3 = QMat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert jordan_type(e12_gl3) == Partition((2, 1))


def test_jordan_type_rejects_non_nilpotent():
    with pytest.raises(NotNilpotentError):
        jordan_type(QMat.identity(2))


def test_jordan_type_conjugation_invariant():
    rng = random.Random(3)
    for n in range(2, 7):
        for p in partitions_of(n):
            x = canonical_nilpotent(p.parts)
            g = random_invertible(rng, n)
            assert jordan_type(g * x * g.inverse()) == p


def test_additive_jc_examples():
    s, nil = additive_jc(QMat.diag([1, 2]))
    assert s == QMat.diag([1, 2]) and nil.is_zero()
    s, nil = additive_jc(QMat([[0, 1], [0, 0]]))
    assert s.is_zero() and nil == E12
    s, nil = additive_jc(QMat([[2, 1], [0, 2]]))
    assert s == QMat.diag([2, 2]) and nil == E12


def test_additive_jc_unsupported_spectrum():
    with pytest.raises(UnsupportedSpectrumError):
        additive_jc(QMat([[0, 1], [2, 0]]))


def test_mult_jc_examples():
    jc = mult_jc(QMat([[1, 1], [0, 1]]))
    assert jc.sigma == QMat.identity(2) and jc.nu == QMat([[1, 1], [0, 1]])
    jc = mult_jc(QMat.diag([1, 2]))
    assert jc.sigma == QMat.diag([1, 2]) and jc.nu == QMat.identity(2)
    jc = mult_jc(QMat([[2, 1], [0, 2]]))
    assert jc.sigma == QMat.diag([2, 2]) and jc.nu == QMat([[1, F(1, 2)], [0, 1]])


def test_mult_jc_rejects_singular():
    with pytest.raises(SingularMatrixError):
        mult_jc(QMat([[0, 0], [0, 1]]))


def test_centralizer_dims():
    assert centralizer_dim(QMat.identity(3)) == 9
    e12_gl3 = QMat([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert centralizer_dim(e12_gl3) == 5
    for n in (2, 3, 4, 5):
        assert centralizer_dim(canonical_nilpotent((n,))) == n


def test_centralizer_matches_dual_partition_formula():
    for n in range(2, 7):
        for p in partitions_of(n):
            assert centralizer_dim(canonical_nilpotent(p.parts)) == centralizer_dim_formula(p)


def test_exp_log():
    assert nilpotent_exp(QMat.zeros(3, 3)) == QMat.identity(3)
    assert nilpotent_exp(E12) == QMat([[1, 1], [0, 1]])
    rng = random.Random(9)
    for n in range(2, 7):
        x = QMat(
            [[rng.randint(-4, 4) if j > i else 0 for j in range(n)] for i in range(n)]
        )
        assert nilpotent_log(nilpotent_exp(x)) == x


def test_ad_is_bracket_homomorphism():
    rng = random.Random(21)
    for n in (2, 3):
        for _ in range(5):
            a = QMat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            b = QMat([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
            lhs = ad_matrix(bracket(a, b))
            rhs = ad_matrix(a) * ad_matrix(b) - ad_matrix(b) * ad_matrix(a)
            assert lhs == rhs


def test_partition_utilities():
    p = Partition((3, 1))
    assert p.dual() == Partition((2, 1, 1))
    assert Partition((2, 2)).dual() == Partition((2, 2))
    assert Partition((4,)).dominates(Partition((2, 2)))
    assert not Partition((2, 2)).dominates(Partition((3, 1)))
    assert len(compositions_of(5)) == 16
    assert len(partitions_of(6)) == 11
