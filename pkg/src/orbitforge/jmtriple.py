"""Lie triples, ad-H gradings and canonical parabolic subalgebras.

A nilpotent X is completed to a triple (X, H, Y) with [H,X] = 2X,
[H,Y] = -2Y, [X,Y] = H by giving each Jordan chain of X the standard
irreducible action of that length.  The grading of gl_n by the integer
eigenvalues of ad H then assembles the canonical parabolic data: the
nonnegative part q, its Levi part l, and the ideals u (levels >= 2) and
u' (levels > 2).  The same construction applied to the unipotent part of
an invertible element, with chains taken inside each eigenspace of the
semisimple part, yields the canonical parabolic of the element.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvariantViolation,
    NotNilpotentError,
    PreconditionError,
    UnsupportedSpectrumError,
)
from .liecore import (
    GroupContext,
    bracket,
    eigen_decomposition,
    is_nilpotent,
    mult_jc,
    nilpotent_log,
)
from .ratmat import QMat, Subspace, kernel_basis, rref_with_pivots, solve_multi

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LieTriple:
    x: QMat
    h: QMat
    y: QMat

    def validate(self) -> None:
        two_x = self.x.scale(2)
        two_y = self.y.scale(2)
        if bracket(self.h, self.x) != two_x:
            raise InvariantViolation("[H,X] != 2X")
        if bracket(self.h, self.y) != -two_y:
            raise InvariantViolation("[H,Y] != -2Y")
        if bracket(self.x, self.y) != self.h:
            raise InvariantViolation("[X,Y] != H")


@dataclass(frozen=True)
class GradedDecomp:
    """ad-H eigenspace decomposition of flattened gl_n, keyed by eigenvalue."""

    n: int
    levels: dict[int, Subspace]

    def level(self, k: int) -> Subspace:
        sub = self.levels.get(k)
        if sub is None:
            return Subspace.zero(self.n * self.n)
        return sub

    def span_of_levels(self, keys) -> Subspace:
        rows = []
        for k in keys:
            sub = self.levels.get(k)
            if sub is not None:
                rows.extend(sub.basis.data)
        return Subspace.from_rows(self.n * self.n, rows)


@dataclass(frozen=True)
class ParabolicData:
    h: QMat
    q: Subspace
    l: Subspace
    u: Subspace
    uprime: Subspace


def jordan_chains(x: QMat, rng: random.Random | None = None) -> list[list[tuple]]:
    """Jordan chains of a nilpotent matrix.

    Each chain is [v, x v, ..., x^(k-1) v] with x^k v = 0;  chains are
    returned longest first and their vectors form a basis.  When ``rng``
    is given, chain tops are drawn as random combinations of kernel
    vectors, producing genuinely different bases run to run.
    """
    n = x.rows
    if not is_nilpotent(x):
        raise NotNilpotentError("Jordan chains require a nilpotent matrix")
    kernels = [Subspace.zero(n)]
    p = QMat.identity(n)
    while kernels[-1].dim < n:
        p = p.matmul(x)
        kernels.append(kernel_basis(p))
    depth = len(kernels) - 1

    chains: list[list[tuple]] = []
    span_rows: list = []  # grows into a basis adapted to the kernel filtration

    def current_span() -> Subspace:
        return Subspace.from_rows(n, span_rows)

    for j in range(depth, 0, -1):
        base_rows = list(kernels[j - 1].basis.data)
        for chain in chains:
            if len(chain) > j:
                base_rows.append(chain[len(chain) - j])
        span = Subspace.from_rows(n, base_rows)
        target = kernels[j]
        while span.dim < target.dim:
            vec = None
            if rng is None:
                for cand in target.basis.data:
                    if not span.contains_vector(cand):
                        vec = cand
                        break
            else:
                for _ in range(200):
                    cand = target.random_element(rng, 3)
                    if not span.contains_vector(cand):
                        vec = cand
                        break
            if vec is None:
                raise InvariantViolation("failed to extend kernel basis")
            chain = [tuple(vec)]
            cur = QMat([list(vec)]).transpose()
            for _ in range(j - 1):
                cur = x.matmul(cur)
                chain.append(tuple(cur.column(0)))
            chains.append(chain)
            span = span.sum(Subspace.from_rows(n, [vec]))
    chains.sort(key=len, reverse=True)
    total = [v for c in chains for v in c]
    if Subspace.from_rows(n, total).dim != n:
        raise InvariantViolation("chain vectors do not form a basis")
    return chains


def _sl2_blocks(lengths: list[int]) -> tuple[QMat, QMat]:
    """Block-diagonal H and Y for chains of the given lengths, in the basis
    ordering (x^(k-1)v, ..., x v, v) per chain."""
    n = sum(lengths)
    h = [[_ZERO] * n for _ in range(n)]
    y = [[_ZERO] * n for _ in range(n)]
    off = 0
    for k in lengths:
        for i in range(1, k + 1):
            h[off + i - 1][off + i - 1] = Fraction(k + 1 - 2 * i)
        for i in range(1, k):
            y[off + i][off + i - 1] = Fraction(i * (k - i))
        off += k
    return QMat(h), QMat(y)


def _triple_from_chains(x: QMat, chains: list[list[tuple]]) -> LieTriple:
    cols = []
    lengths = []
    for chain in chains:
        lengths.append(len(chain))
        for vec in reversed(chain):
            cols.append(list(vec))
    t = QMat(cols).transpose()
    hb, yb = _sl2_blocks(lengths)
    tinv = t.inverse()
    h = t.matmul(hb).matmul(tinv)
    y = t.matmul(yb).matmul(tinv)
    triple = LieTriple(x=x, h=h, y=y)
    triple.validate()
    return triple


def jm_triple(x: QMat, rng: random.Random | None = None) -> LieTriple:
    """Complete a nilpotent x to a Lie triple (x, H, Y)."""
    if x.is_zero():
        n = x.rows
        return LieTriple(x=x, h=QMat.zeros(n, n), y=QMat.zeros(n, n))
    return _triple_from_chains(x, jordan_chains(x, rng))


def graded_decomposition(h: QMat) -> GradedDecomp:
    """Eigenspace decomposition of ad h for diagonalizable h with integer
    eigenvalues.  Levels are spanned by T E_ij T^-1 for an eigenbasis T."""
    n = h.rows
    decomp = eigen_decomposition(h)
    weights = []
    cols = []
    for lam, m, basis_cols in decomp:
        if lam.denominator != 1:
            raise UnsupportedSpectrumError("grading requires integer eigenvalues")
        shifted = h - QMat.identity(n).scale(lam)
        eig = kernel_basis(shifted)
        if eig.dim != m:
            raise UnsupportedSpectrumError("grading requires a diagonalizable matrix")
        for j in range(m):
            weights.append(int(lam))
            cols.append(eig.basis.data[j])
    t = QMat(cols).transpose()
    tinv = t.inverse()
    buckets: dict[int, list] = {}
    for i in range(n):
        for j in range(n):
            k = weights[i] - weights[j]
            # T E_ij T^-1 = col_i(T) row_j(T^-1), flattened row-major
            ci = t.column(i)
            rj = tinv.data[j]
            vec = [ci[a] * rj[b] for a in range(n) for b in range(n)]
            buckets.setdefault(k, []).append(vec)
    levels = {}
    total = 0
    for k, rows in buckets.items():
        sub = Subspace.from_rows(n * n, rows)
        levels[k] = sub
        total += sub.dim
    if total != n * n:
        raise InvariantViolation("graded pieces do not sum to gl_n")
    return GradedDecomp(n=n, levels=levels)


def _check_bracket_closed(ctx: GroupContext, a: Subspace, b: Subspace, target: Subspace, pairs: int | None, rng: random.Random | None, what: str):
    """Assert [a, b] is contained in target, either on all basis pairs or a
    random sample of them."""
    rows_a = a.basis.data
    rows_b = b.basis.data
    all_pairs = [(i, j) for i in range(len(rows_a)) for j in range(len(rows_b))]
    if pairs is not None and rng is not None and len(all_pairs) > pairs:
        all_pairs = rng.sample(all_pairs, pairs)
    for i, j in all_pairs:
        za = ctx.unflatten(rows_a[i])
        zb = ctx.unflatten(rows_b[j])
        if not target.contains_vector(bracket(za, zb).flatten()):
            raise InvariantViolation(f"bracket closure fails: {what}")


def canonical_parabolic(triple: LieTriple, check_pairs: int | None = 48) -> ParabolicData:
    """Assemble q, l, u, u' from the grading of the triple's H.

    Subalgebra and ideal relations are verified on (a sample of) basis
    pairs before returning; failures signal an internal bug.
    """
    grading = graded_decomposition(triple.h)
    n = grading.n
    ctx = GroupContext(n)
    keys = sorted(grading.levels)
    q = grading.span_of_levels([k for k in keys if k >= 0])
    l = grading.level(0)
    u = grading.span_of_levels([k for k in keys if k >= 2])
    uprime = grading.span_of_levels([k for k in keys if k > 2])
    rng = random.Random(0x5EED)
    _check_bracket_closed(ctx, q, q, q, check_pairs, rng, "[q,q] in q")
    if u.dim:
        _check_bracket_closed(ctx, q, u, u, check_pairs, rng, "[q,u] in u")
    if uprime.dim:
        _check_bracket_closed(ctx, q, uprime, uprime, check_pairs, rng, "[q,u'] in u'")
    for row in u.basis.data:
        if not is_nilpotent(ctx.unflatten(row)):
            raise InvariantViolation("u contains a non-nilpotent element")
    return ParabolicData(h=triple.h, q=q, l=l, u=u, uprime=uprime)


def _restricted_matrix(op: QMat, basis_cols: QMat) -> QMat:
    """Matrix of op restricted to the column span of basis_cols."""
    image = op.matmul(basis_cols)
    coords = solve_multi(basis_cols, image)
    if coords is None:
        raise InvariantViolation("operator does not preserve the subspace")
    return coords


def triple_for_element(g: QMat, rng: random.Random | None = None) -> tuple[LieTriple, QMat, QMat]:
    """Lie triple for log(nu) of an invertible g, chosen inside the
    centralizer of sigma: Jordan chains are built blockwise within each
    eigenspace of sigma.  Returns (triple, sigma, nu)."""
    jc = mult_jc(g)
    sigma, nu = jc.sigma, jc.nu
    n = g.rows
    x = nilpotent_log(nu)
    if x.is_zero():
        zero = QMat.zeros(n, n)
        return LieTriple(x=x, h=zero, y=zero), sigma, nu
    chains_global: list[list[tuple]] = []
    for lam, m, basis_cols in eigen_decomposition(sigma):
        # sigma is semisimple so the generalized eigenspace is the eigenspace;
        # x commutes with sigma hence preserves it
        x_res = _restricted_matrix(x, basis_cols)
        for chain in jordan_chains(x_res, rng) if not x_res.is_zero() else [
            [tuple(_unit(m, i))] for i in range(m)
        ]:
            lifted = []
            for vec in chain:
                col = basis_cols.matmul(QMat([list(vec)]).transpose())
                lifted.append(tuple(col.column(0)))
            chains_global.append(lifted)
    chains_global.sort(key=len, reverse=True)
    triple = _triple_from_chains(x, chains_global)
    return triple, sigma, nu


def _unit(n: int, i: int) -> list:
    v = [_ZERO] * n
    v[i] = _ONE
    return v


def canonical_parabolic_of_element(g: QMat, rng: random.Random | None = None) -> ParabolicData:
    """Canonical parabolic data of an invertible element with rational
    spectrum."""
    triple, _, _ = triple_for_element(g, rng)
    return canonical_parabolic(triple)
