import random
from fractions import Fraction as F

import pytest

from orbitforge.errors import DimensionMismatchError, PreconditionError
from orbitforge.polyring import (
    MPoly,
    PolyMat,
    divide_exact,
    mpoly_arith,
    mpoly_gcd,
    partial_derivative,
    poly_det,
)


def xv(i, nv=2):
    return MPoly.var(nv, i)


def rand_poly(rng, nv, deg, terms):
    p = MPoly.zero(nv)
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(nv))
        p = p + MPoly(nv, {e: rng.randint(-4, 4)})
    return p


def test_product_difference_of_squares():
    x, y = xv(0), xv(1)
    assert mpoly_arith(x + y, x - y, "mul") == x * x - y * y


def test_add_zero_and_square():
    x = xv(0)
    p = x * x + MPoly.const(2, 3)
    assert mpoly_arith(p, MPoly.zero(2), "add") == p
    assert mpoly_arith(x, x, "mul") == MPoly(2, {(2, 0): 1})


def test_arith_var_mismatch():
    with pytest.raises(DimensionMismatchError):
        mpoly_arith(MPoly.var(2, 0), MPoly.var(3, 0), "add")


def test_partial_derivatives():
    x, y = xv(0), xv(1)
    assert partial_derivative(x * x * y, 0) == MPoly(2, {(1, 1): 2})
    assert partial_derivative(x * x, 1).is_zero()
    assert partial_derivative(x * x * (-2), 0) == MPoly(2, {(1, 0): -4})


def test_derivative_index_range():
    with pytest.raises(PreconditionError):
        partial_derivative(xv(0), 5)


def test_leibniz_random():
    rng = random.Random(5)
    for _ in range(15):
        a = rand_poly(rng, 3, 2, 3)
        b = rand_poly(rng, 3, 2, 3)
        for v in range(3):
            assert (a * b).diff(v) == a.diff(v) * b + a * b.diff(v)


def test_gcd_monomials():
    x, y = xv(0), xv(1)
    assert mpoly_gcd(x * x * y, x * y * y) == x * y


def test_gcd_with_unit():
    x, y = xv(0), xv(1)
    assert mpoly_gcd(x * x + y, MPoly.const(2, 1)) == MPoly.const(2, 1)


def test_gcd_difference_of_squares():
    x, y = xv(0), xv(1)
    assert mpoly_gcd(x * x - y * y, x - y) == x - y


def test_gcd_divides_inputs_random():
    rng = random.Random(17)
    done = 0
    while done < 12:
        a = rand_poly(rng, 3, 2, 3)
        b = rand_poly(rng, 3, 2, 3)
        g0 = rand_poly(rng, 3, 1, 2)
        if a.is_zero() or b.is_zero() or g0.is_zero():
            continue
        g = mpoly_gcd(a * g0, b * g0)
        assert divide_exact(a * g0, g) is not None
        assert divide_exact(b * g0, g) is not None
        assert divide_exact(g, g0.monic()) is not None  # g0 divides the gcd
        done += 1


def test_gcd_both_zero_rejected():
    with pytest.raises(PreconditionError):
        mpoly_gcd(MPoly.zero(2), MPoly.zero(2))


def test_poly_det_small():
    x, y = xv(0), xv(1)
    assert poly_det(PolyMat(1, 1, [x])) == x
    assert poly_det(PolyMat.from_rows([[x, MPoly.zero(2)], [MPoly.zero(2), y]])) == x * y
    assert poly_det(PolyMat.from_rows([[x, MPoly.const(2, 1)], [MPoly.const(2, 1), x]])) == x * x - MPoly.const(2, 1)


def test_poly_det_non_square():
    with pytest.raises(DimensionMismatchError):
        poly_det(PolyMat(1, 2, [xv(0), xv(1)]))


def test_poly_det_matches_scalar_eval():
    rng = random.Random(23)
    for size in (3, 5, 6):
        ents = [rand_poly(rng, 2, 1, 2) for _ in range(size * size)]
        pm = PolyMat(size, size, ents)
        d = poly_det(pm)
        for _ in range(10):
            pt = [F(rng.randint(-6, 6)) for _ in range(2)]
            assert pm.eval_at(pt).det() == d.eval(pt)


def test_render_format():
    p = MPoly(2, {(2, 1): F(-2), (0, 0): F(1, 3)})
    assert p.render() == "(-2)*x0^2*x1 + (1/3)"
