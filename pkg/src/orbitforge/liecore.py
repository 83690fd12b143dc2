"""The matrix Lie algebra gl_n and group GL_n over exact rationals.

Brackets, adjoint operators, Jordan types, the additive and multiplicative
Jordan-Chevalley decompositions, centralizers and the nilpotent exp/log.
Semisimple parts are restricted to rational spectra; anything else raises
UnsupportedSpectrumError rather than approximating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    DimensionMismatchError,
    InvariantViolation,
    NotNilpotentError,
    NotUnipotentError,
    PreconditionError,
    SingularMatrixError,
    UnsupportedSpectrumError,
)
from .ratmat import QMat, Rat, Subspace, kernel_basis, rref_with_pivots

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; Jordan types of nilpotents."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(p <= 0 for p in parts):
            raise PreconditionError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PreconditionError("partition parts must be weakly decreasing")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def dual(self) -> "Partition":
        if not self.parts:
            return Partition(())
        width = self.parts[0]
        return Partition(
            tuple(sum(1 for p in self.parts if p >= k) for k in range(1, width + 1))
        )

    def dominates(self, other: "Partition") -> bool:
        """Self >= other in the dominance order (same size required)."""
        if self.size != other.size:
            raise PreconditionError("dominance compares partitions of equal size")
        a = list(self.parts)
        b = list(other.parts)
        length = max(len(a), len(b))
        a += [0] * (length - len(a))
        b += [0] * (length - len(b))
        sa = sb = 0
        for x, y in zip(a, b):
            sa += x
            sb += y
            if sa < sb:
                return False
        return True

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, largest part first within each."""

    def gen(n, maxpart):
        if n == 0:
            yield ()
            return
        for first in range(min(n, maxpart), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return [Partition(p) for p in gen(n, n)]


def compositions_of(n: int) -> list[tuple[int, ...]]:
    """All ordered compositions of n."""
    out = []

    def gen(rest, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for first in range(1, rest + 1):
            gen(rest - first, acc + [first])

    gen(n, [])
    return out


class GroupContext:
    """GL_n with the row-major flattening conventions gl_n <-> Q^(n^2)."""

    __slots__ = ("n",)

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("group rank n must be >= 1")
        self.n = n

    @property
    def gl_dim(self) -> int:
        return self.n * self.n

    def flat_index(self, i: int, j: int) -> int:
        return i * self.n + j

    def flatten(self, m: QMat) -> tuple:
        if m.rows != self.n or m.cols != self.n:
            raise DimensionMismatchError("matrix does not match group rank")
        return m.flatten()

    def unflatten(self, vec) -> QMat:
        return QMat.from_flat(list(vec), self.n, self.n)

    def basis_matrix(self, i: int, j: int) -> QMat:
        data = [[_ZERO] * self.n for _ in range(self.n)]
        data[i][j] = _ONE
        return QMat(data)

    def full_space(self) -> Subspace:
        return Subspace.full(self.gl_dim)


def bracket(a: QMat, b: QMat) -> QMat:
    """Lie bracket ab - ba."""
    if not (a.is_square and b.is_square and a.rows == b.rows):
        raise DimensionMismatchError("bracket requires square matrices of equal size")
    return a.matmul(b) - b.matmul(a)


def ad_matrix(a: QMat) -> QMat:
    """Matrix of x -> [a, x] on the row-major flattening of gl_n."""
    if not a.is_square:
        raise DimensionMismatchError("ad requires a square matrix")
    n = a.rows
    nn = n * n
    rows = [[_ZERO] * nn for _ in range(nn)]
    # [a, E_kl]_(i,j) = a_(i,k) d_(j,l) - d_(i,k) a_(l,j)
    for k in range(n):
        for l in range(n):
            col = k * n + l
            for i in range(n):
                v = a.data[i][k]
                if v != 0:
                    rows[i * n + l][col] += v
            for j in range(n):
                v = a.data[l][j]
                if v != 0:
                    rows[k * n + j][col] -= v
    return QMat(rows)


def char_poly(a: QMat) -> list[Rat]:
    """Monic characteristic polynomial coefficients [c0, ..., c_{n-1}, 1]
    with p(x) = x^n + c_{n-1} x^{n-1} + ... + c0 (Faddeev-LeVerrier)."""
    if not a.is_square:
        raise DimensionMismatchError("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [_ONE]  # leading
    m = QMat.identity(n)
    cs = []
    for k in range(1, n + 1):
        am = a.matmul(m)
        ck = -am.trace() / k
        cs.append(ck)
        m = am + QMat.identity(n).scale(ck)
    # p(x) = x^n + cs[0] x^(n-1) + ... + cs[n-1]
    return list(reversed(cs)) + [_ONE]


@lru_cache(maxsize=None)
def _divisors(m: int) -> tuple[int, ...]:
    m = abs(m)
    if m == 0:
        return (0,)
    divs = [1]
    rest = m
    f = 2
    primes = []
    while f * f <= rest:
        if rest % f == 0:
            e = 0
            while rest % f == 0:
                rest //= f
                e += 1
            primes.append((f, e))
        f += 1 if f == 2 else 2
    if rest > 1:
        primes.append((rest, 1))
    for p, e in primes:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return tuple(sorted(divs))


def rational_roots(coeffs: list[Rat]) -> dict[Rat, int]:
    """All rational roots with multiplicity of the polynomial with the given
    ascending coefficients; raises UnsupportedSpectrumError if the polynomial
    does not split into rational linear factors."""
    # clear denominators
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ic = [int(c * den) for c in coeffs]
    while ic and ic[-1] == 0:
        ic.pop()
    if not ic:
        raise PreconditionError("zero polynomial has every root")
    roots: dict[Rat, int] = {}
    # factor out x^k
    k = 0
    while ic[0] == 0:
        ic.pop(0)
        k += 1
    if k:
        roots[Fraction(0)] = k
    degree = len(ic) - 1
    if degree == 0:
        return roots

    def poly_div_root(p: list[int], r: Fraction) -> list[Fraction] | None:
        # synthetic division by (x - r); returns quotient if remainder is 0
        out = []
        acc = Fraction(0)
        for c in reversed(p):
            acc = acc * r + c
            out.append(acc)
        if acc != 0:
            return None
        quo = list(reversed(out[:-1]))
        return quo

    current: list[Fraction] = [Fraction(c) for c in ic]
    candidates = []
    seen = set()
    for p in _divisors(ic[0]):
        for q in _divisors(ic[-1]):
            if q == 0:
                continue
            for s in (1, -1):
                c = Fraction(s * p, q)
                if c not in seen:
                    seen.add(c)
                    candidates.append(c)
    for cand in candidates:
        while True:
            quo = poly_div_root(current, cand)
            if quo is None:
                break
            roots[cand] = roots.get(cand, 0) + 1
            current = quo
            if len(current) == 1:
                break
        if len(current) == 1:
            break
    if len(current) > 1:
        raise UnsupportedSpectrumError(
            "characteristic polynomial does not split over the rationals"
        )
    return roots


def matrix_eigenvalues(a: QMat) -> dict[Rat, int]:
    """Rational eigenvalues with algebraic multiplicities."""
    return rational_roots(char_poly(a))


def eigen_decomposition(a: QMat) -> list[tuple[Rat, int, QMat]]:
    """Generalized eigenspace decomposition over the rationals.

    Returns a list of (eigenvalue, multiplicity, basis matrix whose columns
    span the generalized eigenspace), sorted by eigenvalue.
    """
    n = a.rows
    eigs = matrix_eigenvalues(a)
    out = []
    total = 0
    for lam in sorted(eigs):
        m = eigs[lam]
        shifted = a - QMat.identity(n).scale(lam)
        gen = kernel_basis(shifted.pow(m))
        if gen.dim != m:
            raise InvariantViolation(
                "generalized eigenspace dimension does not match multiplicity"
            )
        cols = gen.basis.transpose()
        out.append((lam, m, cols))
        total += m
    if total != n:
        raise UnsupportedSpectrumError("spectrum does not account for full dimension")
    return out


def additive_jc(a: QMat) -> tuple[QMat, QMat]:
    """Additive Jordan-Chevalley decomposition a = s + nil over Q."""
    if not a.is_square:
        raise DimensionMismatchError("decomposition requires a square matrix")
    n = a.rows
    decomp = eigen_decomposition(a)
    cols = []
    diag = []
    for lam, m, basis_cols in decomp:
        for j in range(m):
            cols.append(basis_cols.column(j))
            diag.append(lam)
    t = QMat(cols).transpose()
    s = t.matmul(QMat.diag(diag)).matmul(t.inverse())
    nil = a - s
    if s.matmul(nil) != nil.matmul(s):
        raise InvariantViolation("semisimple and nilpotent parts do not commute")
    if not is_nilpotent(nil):
        raise InvariantViolation("nilpotent part is not nilpotent")
    return s, nil


@dataclass(frozen=True)
class JordanChevalley:
    """Multiplicative decomposition g = sigma * nu with sigma semisimple
    (rational spectrum) and nu unipotent, commuting."""

    sigma: QMat
    nu: QMat


def mult_jc(g: QMat) -> JordanChevalley:
    """Multiplicative Jordan-Chevalley decomposition."""
    s, nil = additive_jc(g)
    eigs = matrix_eigenvalues(s)
    if Fraction(0) in eigs:
        raise SingularMatrixError("matrix is singular; no multiplicative decomposition")
    nu = QMat.identity(g.rows) + s.inverse().matmul(nil)
    jc = JordanChevalley(sigma=s, nu=nu)
    if s.matmul(nu) != g or s.matmul(nu) != nu.matmul(s):
        raise InvariantViolation("Jordan-Chevalley factors fail sigma*nu = g = nu*sigma")
    if not is_unipotent(nu):
        raise InvariantViolation("unipotent factor is not unipotent")
    return jc


def is_nilpotent(x: QMat) -> bool:
    if not x.is_square:
        return False
    p = x
    for _ in range(x.rows):
        if p.is_zero():
            return True
        p = p.matmul(x)
    return p.is_zero()


def is_unipotent(u: QMat) -> bool:
    return u.is_square and is_nilpotent(u - QMat.identity(u.rows))


def jordan_type(x: QMat) -> Partition:
    """Jordan type of a nilpotent matrix from its rank sequence."""
    if not x.is_square:
        raise DimensionMismatchError("Jordan type of a non-square matrix")
    n = x.rows
    if n == 0:
        return Partition(())
    ranks = [n]
    p = QMat.identity(n)
    for _ in range(n):
        p = p.matmul(x)
        _, piv = rref_with_pivots(p)
        ranks.append(len(piv))
        if ranks[-1] == 0:
            break
    if ranks[-1] != 0:
        raise NotNilpotentError("matrix is not nilpotent")
    # number of blocks of size >= k is rank(x^(k-1)) - rank(x^k)
    dual = []
    for k in range(1, len(ranks)):
        d = ranks[k - 1] - ranks[k]
        if d:
            dual.append(d)
    return Partition(tuple(dual)).dual()


def centralizer_subspace(g: QMat, ambient: Subspace | None = None) -> Subspace:
    """{A in ambient : A g = g A} as a subspace of flattened gl_n."""
    n = g.rows
    ctx = GroupContext(n)
    if ambient is None:
        ambient = ctx.full_space()
    if ambient.ambient_dim != n * n:
        raise DimensionMismatchError("ambient subspace must live in flattened gl_n")
    cols = []
    for row in ambient.basis.data:
        b = ctx.unflatten(row)
        comm = b.matmul(g) - g.matmul(b)
        cols.append(comm.flatten())
    if not cols:
        return Subspace.zero(n * n)
    coeff_kernel = kernel_basis(QMat(cols).transpose())
    vectors = [ambient.element(c) for c in coeff_kernel.basis.data]
    return Subspace.from_rows(n * n, vectors)


def centralizer_dim(g: QMat, ambient: Subspace | None = None) -> int:
    return centralizer_subspace(g, ambient).dim


def nilpotent_exp(x: QMat) -> QMat:
    """exp of a nilpotent matrix (finite series, exact)."""
    if not is_nilpotent(x):
        raise NotNilpotentError("exp requires a nilpotent matrix")
    n = x.rows
    acc = QMat.identity(n)
    term = QMat.identity(n)
    for k in range(1, n):
        term = term.matmul(x).scale(Fraction(1, k))
        if term.is_zero():
            break
        acc = acc + term
    return acc


def nilpotent_log(u: QMat) -> QMat:
    """log of a unipotent matrix (finite series, exact)."""
    n = u.rows
    z = u - QMat.identity(n)
    if not is_nilpotent(z):
        raise NotUnipotentError("log requires a unipotent matrix")
    acc = QMat.zeros(n, n)
    power = QMat.identity(n)
    for k in range(1, n):
        power = power.matmul(z)
        if power.is_zero():
            break
        acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
    return acc


def centralizer_dim_formula(p: Partition) -> int:
    """Combinatorial centralizer dimension: sum of squared dual parts."""
    return sum(q * q for q in p.dual().parts)
