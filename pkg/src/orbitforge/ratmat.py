"""Exact rational dense linear algebra.

Everything downstream (Lie brackets, gradings, centralizers, orbit
sampling) reduces to row reduction, kernels and subspace arithmetic over
the rationals, so this module is written for exactness first and speed
second: the elimination core works on integer-scaled rows with
fraction-free cross-multiplication (Bareiss-style) and per-row gcd
normalization, and only converts back to `Fraction` at the end.

Values are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property

from .errors import DimensionMismatchError, SingularMatrixError

# Exact rational scalar.  fractions.Fraction already enforces the canonical
# form (reduced, positive denominator), which is exactly the invariant the
# rest of the package relies on for structural equality.
Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rat_from_str(s: str) -> Rat:
    """Parse "p/q" or "p" into a rational."""
    return Fraction(s)


def rat_to_str(x: Rat) -> str:
    """Render a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _as_rat(x) -> Rat:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational scalar")


def _row_to_int(row) -> tuple[list[int], int]:
    """Scale a row of rationals to integers; returns (ints, denominator)."""
    den = 1
    for x in row:
        den = den * x.denominator // math.gcd(den, x.denominator)
    return [x.numerator * (den // x.denominator) for x in row], den


def _gcd_reduce(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        g = math.gcd(g, x)
        if g == 1:
            return row
    if g > 1:
        return [x // g for x in row]
    return row


class QMat:
    """Dense matrix of exact rationals, immutable."""

    __slots__ = ("rows", "cols", "data", "_hash")

    def __init__(self, data):
        rows = tuple(tuple(_as_rat(x) for x in r) for r in data)
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.cols:
                raise DimensionMismatchError("ragged rows in matrix literal")
        self.data = rows
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "QMat":
        return QMat([[_ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "QMat":
        return QMat([[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def diag(entries) -> "QMat":
        entries = [_as_rat(x) for x in entries]
        n = len(entries)
        return QMat(
            [[entries[i] if i == j else _ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_flat(vec, rows: int, cols: int) -> "QMat":
        vec = list(vec)
        if len(vec) != rows * cols:
            raise DimensionMismatchError("flat vector length does not match shape")
        return QMat([vec[i * cols : (i + 1) * cols] for i in range(rows)])

    # -- basics --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, QMat)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(rat_to_str(x) for x in r) for r in self.data)
        return f"QMat[{self.rows}x{self.cols}: {body}]"

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> Rat:
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def flatten(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for r in self.data for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def transpose(self) -> "QMat":
        return QMat(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QMat") -> "QMat":
        self._same_shape(other)
        return QMat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "QMat") -> "QMat":
        self._same_shape(other)
        return QMat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self) -> "QMat":
        return QMat([[-a for a in r] for r in self.data])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatchError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def scale(self, s) -> "QMat":
        s = _as_rat(s)
        return QMat([[s * a for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, QMat):
            return self.matmul(other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def matmul(self, other: "QMat") -> "QMat":
        if self.cols != other.rows:
            raise DimensionMismatchError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        # Integer fast path: scale rows of self and columns of other.
        a_int, a_den = [], []
        for r in self.data:
            ints, den = _row_to_int(r)
            a_int.append(ints)
            a_den.append(den)
        bt = other.transpose()
        b_int, b_den = [], []
        for c in bt.data:
            ints, den = _row_to_int(c)
            b_int.append(ints)
            b_den.append(den)
        out = []
        for i in range(self.rows):
            ra = a_int[i]
            da = a_den[i]
            row = []
            for j in range(other.cols):
                cb = b_int[j]
                acc = 0
                for k in range(self.cols):
                    acc += ra[k] * cb[k]
                row.append(Fraction(acc, da * b_den[j]))
            out.append(row)
        return QMat(out)

    def pow(self, k: int) -> "QMat":
        if not self.is_square:
            raise DimensionMismatchError("matrix power requires a square matrix")
        if k < 0:
            raise PreconditionErrorFromPow(k)
        result = QMat.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result.matmul(base)
            base = base.matmul(base) if k > 1 else base
            k >>= 1
        return result

    def trace(self) -> Rat:
        return sum((self.data[i][i] for i in range(self.rows)), _ZERO)

    def det(self) -> Rat:
        """Determinant by fraction-free elimination on integer-scaled rows."""
        if not self.is_square:
            raise DimensionMismatchError("determinant requires a square matrix")
        n = self.rows
        if n == 0:
            return _ONE
        mat, dens = [], []
        for r in self.data:
            ints, den = _row_to_int(r)
            mat.append(ints)
            dens.append(den)
        sign = 1
        prev = 1
        for c in range(n - 1):
            p = None
            for i in range(c, n):
                if mat[i][c]:
                    p = i
                    break
            if p is None:
                return _ZERO
            if p != c:
                mat[c], mat[p] = mat[p], mat[c]
                sign = -sign
            pv = mat[c][c]
            for i in range(c + 1, n):
                vi = mat[i][c]
                mat[i] = [
                    (pv * mat[i][j] - vi * mat[c][j]) // prev for j in range(n)
                ]
            prev = pv
        num = sign * mat[n - 1][n - 1]
        den = 1
        for d in dens:
            den *= d
        return Fraction(num, den)

    def inverse(self) -> "QMat":
        if not self.is_square:
            raise DimensionMismatchError("inverse requires a square matrix")
        n = self.rows
        aug = QMat(
            [
                list(self.data[i]) + list(QMat.identity(n).data[i])
                for i in range(n)
            ]
        )
        red, pivots = rref_with_pivots(aug)
        if list(pivots) != list(range(n)):
            raise SingularMatrixError("matrix is singular, cannot invert")
        return QMat([r[n:] for r in red.data])

    # -- JSON ----------------------------------------------------------

    def to_json_obj(self):
        return [[rat_to_str(x) for x in r] for r in self.data]

    @staticmethod
    def from_json_obj(obj) -> "QMat":
        return QMat([[_as_rat(x) for x in r] for r in obj])


class PreconditionErrorFromPow(DimensionMismatchError):
    def __init__(self, k):
        super().__init__(f"negative matrix power {k} not supported")


def _rref_int_rows(int_rows: list[list[int]], ncols: int):
    """Reduced row echelon form of integer rows.

    Returns (list of Fraction rows including zero rows, pivot columns).
    Row space is preserved; rows are combined by cross-multiplication with
    gcd normalization so all intermediate arithmetic stays integral.
    """
    mat = [list(r) for r in int_rows]
    m = len(mat)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best = -1
        best_abs = None
        for i in range(r, m):
            v = mat[i][c]
            if v:
                a = -v if v < 0 else v
                if best_abs is None or a < best_abs:
                    best, best_abs = i, a
                    if a == 1:
                        break
        if best < 0:
            continue
        if best != r:
            mat[r], mat[best] = mat[best], mat[r]
        pv = mat[r][c]
        for i in range(r + 1, m):
            v = mat[i][c]
            if v:
                g = math.gcd(pv, v)
                a, b = pv // g, v // g
                ri, rp = mat[i], mat[r]
                mat[i] = _gcd_reduce([a * x - b * y for x, y in zip(ri, rp)])
        pivots.append(c)
        r += 1
    # Eliminate above pivots.
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        pv = mat[k][c]
        for i in range(k):
            v = mat[i][c]
            if v:
                g = math.gcd(pv, v)
                a, b = pv // g, v // g
                ri, rk = mat[i], mat[k]
                mat[i] = _gcd_reduce([a * x - b * y for x, y in zip(ri, rk)])
    out = []
    for i in range(m):
        if i < len(pivots):
            pv = mat[i][pivots[i]]
            out.append([Fraction(x, pv) for x in mat[i]])
        else:
            out.append([_ZERO] * ncols)
    return out, tuple(pivots)


def rref_with_pivots(m: QMat) -> tuple[QMat, tuple[int, ...]]:
    int_rows = [_row_to_int(r)[0] for r in m.data]
    rows, pivots = _rref_int_rows(int_rows, m.cols)
    return QMat(rows) if rows else QMat.zeros(0, m.cols), pivots


def rref(m: QMat) -> QMat:
    """Unique reduced row-echelon form, same shape as the input."""
    return rref_with_pivots(m)[0]


def kernel_basis(m: QMat) -> "Subspace":
    """The right kernel {v : m v = 0} as a canonical subspace."""
    red, pivots = rref_with_pivots(m)
    n = m.cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    vectors = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for i, p in enumerate(pivots):
            v[p] = -red.data[i][f]
        vectors.append(v)
    return Subspace.from_rows(n, vectors)


def solve_linear(m: QMat, rhs) -> tuple | None:
    """Some solution of m x = rhs, or None if inconsistent."""
    rhs = [_as_rat(x) for x in rhs]
    if len(rhs) != m.rows:
        raise DimensionMismatchError("right-hand side length does not match rows")
    aug = QMat([list(m.data[i]) + [rhs[i]] for i in range(m.rows)]) if m.rows else QMat.zeros(0, m.cols + 1)
    red, pivots = rref_with_pivots(aug)
    if m.cols in pivots:
        return None
    x = [_ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = red.data[i][m.cols]
    return tuple(x)


def solve_multi(m: QMat, rhs: QMat) -> QMat | None:
    """Solve m X = rhs columnwise; None if any column is inconsistent."""
    if rhs.rows != m.rows:
        raise DimensionMismatchError("right-hand side rows do not match")
    k = rhs.cols
    aug = QMat(
        [list(m.data[i]) + list(rhs.data[i]) for i in range(m.rows)]
    ) if m.rows else QMat.zeros(0, m.cols + k)
    red, pivots = rref_with_pivots(aug)
    for p in pivots:
        if p >= m.cols:
            return None
    cols = []
    for j in range(k):
        x = [_ZERO] * m.cols
        for i, p in enumerate(pivots):
            x[p] = red.data[i][m.cols + j]
        cols.append(x)
    return QMat(cols).transpose()


class Subspace:
    """Subspace of Q^ambient_dim stored as an RREF basis (zero rows dropped).

    Canonical storage makes equality structural: two subspaces are equal
    iff their stored bases agree entrywise.
    """

    __slots__ = ("ambient_dim", "basis", "__dict__")

    def __init__(self, ambient_dim: int, basis: QMat):
        self.ambient_dim = ambient_dim
        self.basis = basis

    @staticmethod
    def from_rows(ambient_dim: int, rows) -> "Subspace":
        rows = [list(r) for r in rows]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionMismatchError("basis row length != ambient dimension")
        if not rows:
            return Subspace(ambient_dim, QMat.zeros(0, ambient_dim))
        red, pivots = rref_with_pivots(QMat(rows))
        kept = [red.data[i] for i in range(len(pivots))]
        if not kept:
            return Subspace(ambient_dim, QMat.zeros(0, ambient_dim))
        return Subspace(ambient_dim, QMat(kept))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, QMat.zeros(0, ambient_dim))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, QMat.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def is_zero(self) -> bool:
        return self.basis.rows == 0

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        out = []
        for r in self.basis.data:
            for j, x in enumerate(r):
                if x != 0:
                    out.append(j)
                    break
        return tuple(out)

    @cached_property
    def _int_basis(self) -> list[tuple[list[int], int]]:
        """Integer-scaled basis rows paired with pivot values, for fast reduce."""
        out = []
        for r, p in zip(self.basis.data, self.pivots):
            ints, _ = _row_to_int(r)
            out.append((ints, ints[p], p))
        return out

    def reduce(self, vec) -> tuple:
        """Residual of vec after reduction against the basis (exact)."""
        vec = [_as_rat(x) for x in vec]
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError("vector length != ambient dimension")
        ints, den = _row_to_int(vec)
        for row, pv, p in self._int_basis:
            v = ints[p]
            if v:
                g = math.gcd(pv, v)
                a, b = pv // g, v // g
                ints = [a * x - b * y for x, y in zip(ints, row)]
                den *= a
                # joint gcd keeps the value ints/den exact while bounding growth
                gg = den
                for x in ints:
                    gg = math.gcd(gg, x)
                    if gg == 1:
                        break
                if gg > 1:
                    ints = [x // gg for x in ints]
                    den //= gg
        return tuple(Fraction(x, den) for x in ints)

    def contains_vector(self, vec) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        return all(self.contains_vector(r) for r in other.basis.data)

    def coords_of(self, vec) -> tuple | None:
        """Coefficients of vec in the stored basis, or None if outside."""
        vec = [_as_rat(x) for x in vec]
        coeffs = []
        residual = list(vec)
        for row, p in zip(self.basis.data, self.pivots):
            c = residual[p]
            coeffs.append(c)
            if c != 0:
                residual = [x - c * y for x, y in zip(residual, row)]
        if any(x != 0 for x in residual):
            return None
        return tuple(coeffs)

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("ambient dimensions differ")
        rows = list(self.basis.data) + list(other.basis.data)
        return Subspace.from_rows(self.ambient_dim, rows)

    def perp(self) -> "Subspace":
        """Orthogonal complement under the standard dot product."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel_basis(self.basis)

    def element(self, coeffs) -> tuple:
        """Linear combination of basis rows with the given coefficients."""
        coeffs = [_as_rat(c) for c in coeffs]
        if len(coeffs) != self.dim:
            raise DimensionMismatchError("coefficient count != subspace dimension")
        out = [_ZERO] * self.ambient_dim
        for c, row in zip(coeffs, self.basis.data):
            if c != 0:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def random_element(self, rng, bound: int = 5) -> tuple:
        return self.element([rng.randint(-bound, bound) for _ in range(self.dim)])

    def to_json_obj(self):
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json_obj()}


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Canonical basis of the intersection, via orthogonal complements."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("ambient dimensions differ")
    return a.perp().sum(b.perp()).perp()
