"""Multivariate polynomials over the rationals.

Supports the ring operations, formal derivatives, gcd and determinants of
polynomial matrices.  Terms are kept in a dict keyed by exponent vectors;
the graded-lexicographic order fixes leading terms and the normalization
of gcds.  No factorization and no parsing: polynomials are built
programmatically and rendered to plain text for reports.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatchError, PreconditionError
from .ratmat import QMat, Rat, rat_to_str, _as_rat

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MPoly:
    """Polynomial in num_vars variables with rational coefficients."""

    __slots__ = ("num_vars", "terms")

    def __init__(self, num_vars: int, terms=None):
        self.num_vars = num_vars
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = _as_rat(c)
                if c != 0:
                    exp = tuple(int(e) for e in exp)
                    if len(exp) != num_vars:
                        raise DimensionMismatchError(
                            "exponent vector length != num_vars"
                        )
                    clean[exp] = c
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(num_vars: int) -> "MPoly":
        return MPoly(num_vars)

    @staticmethod
    def const(num_vars: int, c) -> "MPoly":
        c = _as_rat(c)
        if c == 0:
            return MPoly(num_vars)
        return MPoly(num_vars, {(0,) * num_vars: c})

    @staticmethod
    def var(num_vars: int, i: int, power: int = 1) -> "MPoly":
        if not 0 <= i < num_vars:
            raise PreconditionError(f"variable index {i} out of range")
        exp = [0] * num_vars
        exp[i] = power
        return MPoly(num_vars, {tuple(exp): _ONE})

    # -- predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Rat:
        if not self.terms:
            return _ZERO
        if not self.is_constant():
            raise PreconditionError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, MPoly)
            and self.num_vars == other.num_vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.num_vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- ring operations --------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.num_vars != other.num_vars:
            raise DimensionMismatchError("variable-count mismatch")

    def __add__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, _ZERO) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        out = MPoly(self.num_vars)
        out.terms = terms
        return out

    def __sub__(self, other: "MPoly") -> "MPoly":
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, _ZERO) - c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        out = MPoly(self.num_vars)
        out.terms = terms
        return out

    def __neg__(self) -> "MPoly":
        out = MPoly(self.num_vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return MPoly(self.num_vars)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        terms: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = terms.get(exp, _ZERO) + ca * cb
                if s:
                    terms[exp] = s
                else:
                    terms.pop(exp, None)
        out = MPoly(self.num_vars)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "MPoly":
        c = _as_rat(c)
        out = MPoly(self.num_vars)
        if c != 0:
            out.terms = {e: c * v for e, v in self.terms.items()}
        return out

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise PreconditionError("negative polynomial power")
        result = MPoly.const(self.num_vars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- calculus and evaluation ----------------------------------------

    def diff(self, var_index: int) -> "MPoly":
        if not 0 <= var_index < self.num_vars:
            raise PreconditionError(f"variable index {var_index} out of range")
        terms = {}
        for exp, c in self.terms.items():
            e = exp[var_index]
            if e:
                nexp = list(exp)
                nexp[var_index] = e - 1
                nexp = tuple(nexp)
                s = terms.get(nexp, _ZERO) + c * e
                if s:
                    terms[nexp] = s
                else:
                    terms.pop(nexp, None)
        out = MPoly(self.num_vars)
        out.terms = terms
        return out

    def eval(self, point) -> Rat:
        point = [_as_rat(x) for x in point]
        if len(point) != self.num_vars:
            raise DimensionMismatchError("evaluation point length != num_vars")
        total = _ZERO
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            total += v
        return total

    def eval_partial(self, assignment: dict[int, Rat]) -> "MPoly":
        """Substitute constants for some variables (indices keep meaning)."""
        out_terms: dict = {}
        for exp, c in self.terms.items():
            v = c
            nexp = list(exp)
            for i, x in assignment.items():
                e = exp[i]
                if e:
                    v *= _as_rat(x) ** e
                nexp[i] = 0
            if v:
                key = tuple(nexp)
                s = out_terms.get(key, _ZERO) + v
                if s:
                    out_terms[key] = s
                else:
                    out_terms.pop(key, None)
        out = MPoly(self.num_vars)
        out.terms = out_terms
        return out

    def rename_vars(self, mapping: list[int], new_num_vars: int) -> "MPoly":
        """Move variable i to index mapping[i]; unused new slots stay zero."""
        terms = {}
        for exp, c in self.terms.items():
            nexp = [0] * new_num_vars
            for i, e in enumerate(exp):
                if e:
                    nexp[mapping[i]] += e
            terms[tuple(nexp)] = terms.get(tuple(nexp), _ZERO) + c
        return MPoly(new_num_vars, terms)

    def substitute_linear(self, forms: list["MPoly"]) -> "MPoly":
        """Substitute variable i by the polynomial forms[i]."""
        if len(forms) != self.num_vars:
            raise DimensionMismatchError("need one substitution form per variable")
        nv = forms[0].num_vars if forms else self.num_vars
        result = MPoly.zero(nv)
        # cache powers of each form
        powers: list[dict[int, MPoly]] = [dict() for _ in range(self.num_vars)]
        for exp, c in self.terms.items():
            term = MPoly.const(nv, c)
            for i, e in enumerate(exp):
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = forms[i] ** e
                    term = term * cache[e]
            result = result + term
        return result

    # -- leading data and normalization ----------------------------------

    def leading(self) -> tuple[tuple[int, ...], Rat]:
        if not self.terms:
            raise PreconditionError("zero polynomial has no leading term")
        exp = max(self.terms, key=_grlex_key)
        return exp, self.terms[exp]

    def monic(self) -> "MPoly":
        """Normalize leading coefficient (graded-lex) to 1."""
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(1 / lc)

    # -- rendering --------------------------------------------------------

    def render(self, names: list[str] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.num_vars)]
        parts = []
        for exp in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[exp]
            factors = [f"({rat_to_str(c)})"]
            for i, e in enumerate(exp):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    __repr__ = render


def mpoly_arith(a: MPoly, b: MPoly, kind: str) -> MPoly:
    """Dispatch form of the ring operations: kind in {add, sub, mul}."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise PreconditionError(f"unknown arithmetic kind {kind!r}")


def partial_derivative(p: MPoly, var_index: int) -> MPoly:
    return p.diff(var_index)


def divide_exact(p: MPoly, d: MPoly) -> MPoly | None:
    """Quotient p/d when d divides p exactly, else None."""
    if d.is_zero():
        raise PreconditionError("division by the zero polynomial")
    if p.is_zero():
        return MPoly.zero(p.num_vars)
    p._check(d)
    lt_d, lc_d = d.leading()
    quot: dict = {}
    rem = dict(p.terms)
    while rem:
        exp = max(rem, key=_grlex_key)
        c = rem[exp]
        qexp = tuple(a - b for a, b in zip(exp, lt_d))
        if any(e < 0 for e in qexp):
            return None
        qc = c / lc_d
        quot[qexp] = quot.get(qexp, _ZERO) + qc
        for de, dc in d.terms.items():
            key = tuple(a + b for a, b in zip(qexp, de))
            s = rem.get(key, _ZERO) - qc * dc
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    out = MPoly(p.num_vars)
    out.terms = {e: c for e, c in quot.items() if c}
    return out


def _vars_used(p: MPoly) -> set[int]:
    used = set()
    for exp in p.terms:
        for i, e in enumerate(exp):
            if e:
                used.add(i)
    return used


def _to_univar(p: MPoly, v: int) -> dict[int, MPoly]:
    """View p as a polynomial in variable v with MPoly coefficients."""
    coeffs: dict[int, MPoly] = {}
    for exp, c in p.terms.items():
        d = exp[v]
        nexp = list(exp)
        nexp[v] = 0
        co = coeffs.setdefault(d, MPoly.zero(p.num_vars))
        co.terms[tuple(nexp)] = co.terms.get(tuple(nexp), _ZERO) + c
    for d in list(coeffs):
        coeffs[d].terms = {e: c for e, c in coeffs[d].terms.items() if c}
        if not coeffs[d].terms:
            del coeffs[d]
    return coeffs


def _from_univar(coeffs: dict[int, MPoly], v: int, num_vars: int) -> MPoly:
    out = MPoly.zero(num_vars)
    for d, co in coeffs.items():
        xv = MPoly.var(num_vars, v, d) if d else MPoly.const(num_vars, 1)
        out = out + co * xv
    return out


def _content(p: MPoly, v: int) -> MPoly:
    """Gcd of the coefficients of p viewed in the variable v."""
    coeffs = list(_to_univar(p, v).values())
    g = coeffs[0]
    for c in coeffs[1:]:
        g = mpoly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _prem(a: MPoly, b: MPoly, v: int) -> MPoly:
    """Pseudo-remainder of a by b in the variable v."""
    db = max((e[v] for e in b.terms), default=-1)
    if db < 0:
        raise PreconditionError("pseudo-division by polynomial without main variable")
    lb = _to_univar(b, v)[db]
    r = a
    while not r.is_zero():
        dr = max(e[v] for e in r.terms)
        if dr < db:
            break
        lr = _to_univar(r, v)[dr]
        shift = MPoly.var(r.num_vars, v, dr - db) if dr > db else MPoly.const(r.num_vars, 1)
        r = lb * r - lr * shift * b
    return r


def _univar_gcd_rat(a: MPoly, b: MPoly, v: int) -> MPoly:
    """Euclidean gcd for polynomials in the single variable v (field coeffs)."""

    def to_list(p):
        f = _to_univar(p, v)
        d = max(f) if f else -1
        return [f[i].constant_value() if i in f else _ZERO for i in range(d + 1)]

    pa, pb = to_list(a), to_list(b)

    def rem(x, y):
        x = list(x)
        dy = len(y) - 1
        while len(x) - 1 >= dy and any(c != 0 for c in x):
            while x and x[-1] == 0:
                x.pop()
            if len(x) - 1 < dy:
                break
            q = x[-1] / y[-1]
            off = len(x) - 1 - dy
            for i in range(dy + 1):
                x[off + i] -= q * y[i]
            x.pop()
        while x and x[-1] == 0:
            x.pop()
        return x

    while pb:
        pa, pb = pb, rem(pa, pb)
    out = MPoly.zero(a.num_vars)
    for i, c in enumerate(pa):
        if c != 0:
            out = out + MPoly.var(a.num_vars, v, i).scale(c)
    return out


def mpoly_gcd(a: MPoly, b: MPoly) -> MPoly:
    """A gcd of a and b, monic under the graded-lex term order.

    Content/primitive-part recursion one variable at a time; at the base,
    ordinary euclidean division over the rational coefficients.
    """
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise PreconditionError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MPoly.const(a.num_vars, 1)
    va, vb = _vars_used(a), _vars_used(b)
    common = va | vb
    v = max(common)
    if not (v in va and v in vb):
        # main variable missing from one side: gcd divides the content side
        if v in va:
            return mpoly_gcd(_content(a, v), b)
        return mpoly_gcd(a, _content(b, v))
    if va == {v} and vb == {v}:
        return _univar_gcd_rat(a, b, v).monic()
    ca, cb = _content(a, v), _content(b, v)
    pa = divide_exact(a, ca)
    pb = divide_exact(b, cb)
    if pa is None or pb is None:
        raise PreconditionError("content division failed; gcd internal error")
    cg = mpoly_gcd(ca, cb)
    # primitive PRS on the primitive parts
    da = max(e[v] for e in pa.terms)
    db = max(e[v] for e in pb.terms)
    if da < db:
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, v)
        if r.is_zero():
            g = pb
            break
        if all(e[v] == 0 for e in r.terms):
            # nonzero remainder free of v: primitive parts are coprime in v
            g = MPoly.const(a.num_vars, 1)
            break
        pa, pb = pb, divide_exact(r, _content(r, v))
    return (cg * g).monic()


class PolyMat:
    """Matrix with polynomial entries (all sharing num_vars)."""

    __slots__ = ("rows", "cols", "num_vars", "entries")

    def __init__(self, rows: int, cols: int, entries: list[MPoly]):
        if len(entries) != rows * cols:
            raise DimensionMismatchError("entry count != rows*cols")
        nv = entries[0].num_vars if entries else 0
        for e in entries:
            if e.num_vars != nv:
                raise DimensionMismatchError("entries disagree on num_vars")
        self.rows = rows
        self.cols = cols
        self.num_vars = nv
        self.entries = list(entries)

    @staticmethod
    def from_rows(rows_of_polys: list[list[MPoly]]) -> "PolyMat":
        r = len(rows_of_polys)
        c = len(rows_of_polys[0]) if r else 0
        flat = [p for row in rows_of_polys for p in row]
        return PolyMat(r, c, flat)

    def entry(self, i: int, j: int) -> MPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[MPoly]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def eval_at(self, point) -> QMat:
        return QMat(
            [
                [self.entry(i, j).eval(point) for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def submatrix(self, row_idx, col_idx) -> "PolyMat":
        ents = [self.entry(i, j) for i in row_idx for j in col_idx]
        return PolyMat(len(row_idx), len(col_idx), ents)


def _det_cofactor(m: PolyMat) -> MPoly:
    n = m.rows
    if n == 0:
        return MPoly.const(m.num_vars, 1)
    if n == 1:
        return m.entry(0, 0)
    if n == 2:
        return m.entry(0, 0) * m.entry(1, 1) - m.entry(0, 1) * m.entry(1, 0)
    total = MPoly.zero(m.num_vars)
    cols = list(range(n))
    for j in range(n):
        c = m.entry(0, j)
        if c.is_zero():
            continue
        rest = m.submatrix(range(1, n), [x for x in cols if x != j])
        minor = _det_cofactor(rest)
        if j % 2:
            total = total - c * minor
        else:
            total = total + c * minor
    return total


def _det_bareiss(m: PolyMat) -> MPoly:
    n = m.rows
    a = [[m.entry(i, j) for j in range(n)] for i in range(n)]
    sign = 1
    prev = MPoly.const(m.num_vars, 1)
    for k in range(n - 1):
        # pivot: nonzero entry with the fewest terms
        piv = -1
        best = None
        for i in range(k, n):
            if not a[i][k].is_zero():
                size = len(a[i][k].terms)
                if best is None or size < best:
                    piv, best = i, size
        if piv < 0:
            return MPoly.zero(m.num_vars)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                q = divide_exact(num, prev)
                if q is None:
                    raise PreconditionError("fraction-free step not divisible; internal error")
                a[i][j] = q
        for i in range(k + 1, n):
            a[i][k] = MPoly.zero(m.num_vars)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def poly_det(m: PolyMat) -> MPoly:
    """Exact determinant; cofactor expansion for size <= 4, fraction-free
    elimination above."""
    if m.rows != m.cols:
        raise DimensionMismatchError("determinant requires a square matrix")
    if m.rows <= 4:
        return _det_cofactor(m)
    return _det_bareiss(m)
