"""Prehomogeneous-space diagnostics.

An affine action is modeled by the polynomial vector fields of a basis of
the acting Lie algebra in fixed coordinates.  The rank of the field matrix
at a point detects the open orbit; the gcd of its maximal minors cuts out
the codimension-one part of the singular set, so a constant gcd is exactly
speciality (no nonconstant relative invariants).  The module also builds
the conjugation action on gamma N / N^C by a truncated logarithm series
(finite by nilpotency), the determinant-type relative invariant on the
grade-2 piece of a Lie triple, its character law, and the Hessian-of-log
regularity certificate.

Sign convention: fields are tangent vectors of t -> exp(tZ) acting on the
left, so Z -> V_Z is an anti-homomorphism: [V_a, V_b] = V_{[b,a]} under
the usual vector-field bracket.  Every rank, minor and gcd computation is
insensitive to this sign.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._rng import stream
from .errors import (
    DimensionMismatchError,
    InvariantViolation,
    PreconditionError,
    SingularMatrixError,
)
from .jmtriple import LieTriple, graded_decomposition
from .liecore import GroupContext, bracket, centralizer_subspace
from .polyring import MPoly, PolyMat, divide_exact, mpoly_gcd, poly_det
from .ratmat import QMat, Subspace, kernel_basis, rref_with_pivots, solve_linear

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class AffineActionModel:
    """Polynomial vector fields of an affine action.

    vector_fields has one row per generator and one column per coordinate;
    entry (i, j) is the j-th coordinate of the field of generator i.
    """

    coord_dim: int
    generators: list[QMat]
    vector_fields: PolyMat

    def __post_init__(self):
        if self.vector_fields.rows != len(self.generators):
            raise DimensionMismatchError("one field row per generator required")
        if self.vector_fields.cols != self.coord_dim:
            raise DimensionMismatchError("one field column per coordinate required")
        if self.vector_fields.entries and self.vector_fields.num_vars != self.coord_dim:
            raise DimensionMismatchError("fields must be polynomials in the coordinates")

    def field_row(self, i: int) -> list[MPoly]:
        return self.vector_fields.row(i)

    def validate_bracket_compatibility(self, pairs: list[tuple[int, int]] | None = None) -> None:
        """Check [V_a, V_b] = V_{[Z_b, Z_a]} on generator pairs.

        The right side is expanded in the generator span; if [Z_b, Z_a]
        falls outside it the model is not a Lie algebra action."""
        m = len(self.generators)
        if m == 0 or self.coord_dim == 0:
            return
        nn = self.generators[0].rows ** 2
        gen_space_rows = [g.flatten() for g in self.generators]
        gen_mat = QMat(gen_space_rows).transpose()
        if pairs is None:
            pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        for a, b in pairs:
            va = self.field_row(a)
            vb = self.field_row(b)
            comm = []
            for j in range(self.coord_dim):
                acc = MPoly.zero(self.coord_dim)
                for k in range(self.coord_dim):
                    acc = acc + va[k] * vb[j].diff(k) - vb[k] * va[j].diff(k)
                comm.append(acc)
            target = bracket(self.generators[b], self.generators[a])
            coeffs = solve_linear(gen_mat, target.flatten())
            if coeffs is None:
                raise InvariantViolation("bracket of generators leaves the acting algebra")
            expected = []
            for j in range(self.coord_dim):
                acc = MPoly.zero(self.coord_dim)
                for i, cf in enumerate(coeffs):
                    if cf != 0:
                        acc = acc + self.field_row(i)[j].scale(cf)
                expected.append(acc)
            if comm != expected:
                raise InvariantViolation("vector fields violate bracket compatibility")


@dataclass
class SpecialityReport:
    open_orbit_found: bool
    witness_point: tuple | None
    singular_gcd: MPoly | None
    is_special: bool

    def to_json_obj(self):
        from .ratmat import rat_to_str

        return {
            "open_orbit_found": self.open_orbit_found,
            "witness_point": [rat_to_str(x) for x in self.witness_point]
            if self.witness_point is not None
            else None,
            "singular_gcd": self.singular_gcd.render() if self.singular_gcd is not None else None,
            "is_special": self.is_special,
        }


def open_orbit_test(model: AffineActionModel, trials: int = 25, seed: int = 0) -> tuple[bool, tuple | None]:
    """Search for a rational point where the field matrix has full rank
    (= open orbit through that point).  False after `trials` failures is
    an inconclusive negative."""
    d = model.coord_dim
    if d == 0:
        return True, ()
    if len(model.generators) < d:
        return False, None
    for t in range(trials):
        rng = stream(seed, "openorbit", t)
        bound = 3 + 2 * t
        point = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(d))
        mat = model.vector_fields.eval_at(point)
        _, piv = rref_with_pivots(mat)
        if len(piv) == d:
            return True, point
    return False, None


def _full_rank_rows_at(model: AffineActionModel, point) -> tuple[int, ...]:
    """A set of coord_dim generator rows whose fields are independent at
    the witness point."""
    mat = model.vector_fields.eval_at(point)
    _, piv = rref_with_pivots(mat.transpose())
    return piv


def _minor_gcd_memo(matrix: PolyMat, row_subsets: list[tuple[int, ...]], stop_when_constant=True):
    """Gcd of the determinants of the given row subsets (all columns).

    Sub-determinants are memoized on (rows, cols) pairs so overlapping
    subsets share work; expansion goes along the first row of the subset."""
    d = matrix.cols
    memo: dict[tuple[tuple[int, ...], tuple[int, ...]], MPoly] = {}

    def minor(rows: tuple[int, ...], cols: tuple[int, ...]) -> MPoly:
        if not rows:
            return MPoly.const(matrix.num_vars, 1)
        key = (rows, cols)
        got = memo.get(key)
        if got is not None:
            return got
        r0 = rows[0]
        total = MPoly.zero(matrix.num_vars)
        for idx, c in enumerate(cols):
            e = matrix.entry(r0, c)
            if e.is_zero():
                continue
            sub = minor(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = e * sub
            total = total - term if idx % 2 else total + term
        memo[key] = total
        return total

    cols = tuple(range(d))
    g: MPoly | None = None
    for rows in row_subsets:
        det = minor(tuple(rows), cols)
        if det.is_zero():
            continue
        g = det if g is None else mpoly_gcd(g, det)
        if stop_when_constant and g is not None and g.is_constant():
            break
    return g


def singular_gcd(
    model: AffineActionModel,
    subset_budget: int = 5000,
    seed: int = 0,
    witness: tuple | None = None,
) -> MPoly:
    """Gcd of the d x d minors of the field matrix (d = coord_dim).

    All subsets are enumerated when their count is within subset_budget;
    otherwise a seeded sample (always containing a witness full-rank
    subset) is used, and a nonconstant result is confirmed on 10 extra
    random subsets.  The zero locus of all maximal minors is the singular
    set; a nonconstant gcd is exactly its codimension-one part."""
    d = model.coord_dim
    m = len(model.generators)
    if d == 0:
        return MPoly.const(0, 1)
    if witness is None:
        found, witness = open_orbit_test(model, 25, seed)
        if not found:
            raise PreconditionError("singular gcd requires a full-rank witness point")
    count = 1
    for i in range(d):
        count = count * (m - i) // (i + 1)
    witness_rows = _full_rank_rows_at(model, witness)
    if count <= subset_budget:
        subsets = [tuple(s) for s in itertools.combinations(range(m), d)]
        g = _minor_gcd_memo(model.vector_fields, subsets)
    else:
        rng = stream(seed, "minors")
        chosen = {tuple(witness_rows)}
        while len(chosen) < min(subset_budget, count):
            chosen.add(tuple(sorted(rng.sample(range(m), d))))
        g = _minor_gcd_memo(model.vector_fields, sorted(chosen))
        if g is not None and not g.is_constant():
            extra = set()
            while len(extra) < 10:
                cand = tuple(sorted(rng.sample(range(m), d)))
                if cand not in chosen:
                    extra.add(cand)
            g2 = _minor_gcd_memo(model.vector_fields, sorted(chosen | extra))
            g = g2
    if g is None:
        raise InvariantViolation("all maximal minors vanish despite a full-rank witness")
    return g.monic()


def is_special(
    model: AffineActionModel,
    trials: int = 25,
    subset_budget: int = 5000,
    seed: int = 0,
) -> SpecialityReport:
    """Speciality = the singular-set gcd is a nonzero constant."""
    found, witness = open_orbit_test(model, trials, seed)
    if not found:
        return SpecialityReport(
            open_orbit_found=False, witness_point=None, singular_gcd=None, is_special=False
        )
    g = singular_gcd(model, subset_budget, seed, witness)
    return SpecialityReport(
        open_orbit_found=True,
        witness_point=witness,
        singular_gcd=g,
        is_special=g.is_constant() and not g.is_zero(),
    )


# ---------------------------------------------------------------------------
# conjugation models on gamma N / N^C
# ---------------------------------------------------------------------------


def _coordinate_complement(whole: Subspace, sub: Subspace) -> list[tuple]:
    """Rows of whole's basis that extend sub to whole (a graded complement
    when whole's basis consists of coordinate vectors)."""
    if not whole.contains(sub):
        raise PreconditionError("complement requires sub contained in whole")
    comp = []
    acc = sub
    for row in whole.basis.data:
        if not acc.contains_vector(row):
            comp.append(row)
            acc = acc.sum(Subspace.from_rows(whole.ambient_dim, [row]))
    if acc.dim != whole.dim:
        raise InvariantViolation("complement construction failed")
    return comp


def _poly_matrix_exp(xi: list[list[MPoly]], n: int, nv: int) -> list[list[MPoly]]:
    """exp of a nilpotent matrix of polynomials (finite series)."""
    ident = [[MPoly.const(nv, 1) if i == j else MPoly.zero(nv) for j in range(n)] for i in range(n)]
    acc = [row[:] for row in ident]
    term = [row[:] for row in ident]
    for k in range(1, n + 1):
        term = _pm_mul(term, xi, n, nv)
        if all(e.is_zero() for row in term for e in row):
            break
        coef = Fraction(1)
        for i in range(2, k + 1):
            coef /= i
        scaled = [[e.scale(coef) for e in row] for row in term]
        acc = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, scaled)]
    else:
        raise PreconditionError("matrix of polynomials is not nilpotent")
    return acc


def _pm_mul(a, b, n, nv):
    out = [[MPoly.zero(nv) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            e = a[i][k]
            if e.is_zero():
                continue
            for j in range(n):
                f = b[k][j]
                if not f.is_zero():
                    out[i][j] = out[i][j] + e * f
    return out


def _pm_from_qmat(m: QMat, nv: int):
    return [[MPoly.const(nv, m.data[i][j]) for j in range(m.cols)] for i in range(m.rows)]


def _dlog_first_order(nu_tilde, b, n, nv):
    """First-order term of log(E + t B) where E - I = nu_tilde is nilpotent:
    sum over k of (-1)^(k+1)/k of all splittings nu^a B nu^b with a+b = k-1."""
    powers = [None]  # powers[a] = nu_tilde^a
    ident = [[MPoly.const(nv, 1) if i == j else MPoly.zero(nv) for j in range(n)] for i in range(n)]
    powers[0] = ident
    cur = ident
    r = 1
    while True:
        cur = _pm_mul(cur, nu_tilde, n, nv)
        if all(e.is_zero() for row in cur for e in row):
            break
        powers.append(cur)
        r += 1
        if r > n + 1:
            raise PreconditionError("matrix is not nilpotent in dlog computation")
    out = [[MPoly.zero(nv) for _ in range(n)] for _ in range(n)]
    max_k = 2 * len(powers) - 1
    for k in range(1, max_k + 1):
        coef = Fraction((-1) ** (k + 1), k)
        for a in range(min(k, len(powers))):
            bb = k - 1 - a
            if bb >= len(powers):
                continue
            term = _pm_mul(_pm_mul(powers[a], b, n, nv), powers[bb], n, nv)
            out = [
                [o + t.scale(coef) for o, t in zip(ro, rt)]
                for ro, rt in zip(out, term)
            ]
    return out


@dataclass
class ConjugationModelData:
    """A conjugation action model on gamma N / N^C together with the data
    used to build it."""

    model: AffineActionModel
    stabilizer: Subspace  # p_{gamma N} inside flattened gl_n
    complement_rows: list[tuple]  # coordinates: basis of n modulo nc
    nc: Subspace


def stabilizer_of_coset(gamma: QMat, p_basis: Subspace, n_basis: Subspace) -> Subspace:
    """{Z in p : gamma^-1 Z gamma - Z in n}, the Lie algebra of the
    stabilizer of the coset gamma N under conjugation."""
    n = gamma.rows
    ctx = GroupContext(n)
    ginv = gamma.inverse()
    residuals = []
    for row in p_basis.basis.data:
        z = ctx.unflatten(row)
        moved = ginv.matmul(z).matmul(gamma) - z
        residuals.append(n_basis.reduce(moved.flatten()))
    coeff_kernel = kernel_basis(QMat(residuals).transpose()) if residuals else Subspace.zero(0)
    vectors = [p_basis.element(c) for c in coeff_kernel.basis.data]
    return Subspace.from_rows(n * n, vectors)


def build_conjugation_model(
    gamma: QMat,
    p_basis: Subspace,
    n_basis: Subspace,
    nc_basis: Subspace,
) -> ConjugationModelData:
    """Vector fields of the stabilizer of gamma N acting on gamma N / N^C.

    Coordinates are a fixed complement of nc inside n; the point with
    coordinates x is the coset of gamma exp(sum x_i F_i).  The field of a
    generator Z is the first-order motion of the logarithm coordinate,
    computed by the exact truncated series and projected along nc."""
    n = gamma.rows
    nn = n * n
    ctx = GroupContext(n)
    if not n_basis.contains(nc_basis):
        raise PreconditionError("nc must be contained in n")
    if gamma.det() == 0:
        raise SingularMatrixError("gamma must be invertible")
    stab = stabilizer_of_coset(gamma, p_basis, n_basis)
    comp_rows = _coordinate_complement(n_basis, nc_basis)
    d = len(comp_rows)
    # decomposition bookkeeping: solve w = c . nc_rows + y . comp_rows
    dec_rows = list(nc_basis.basis.data) + comp_rows
    dec_mat = QMat(dec_rows) if dec_rows else QMat.zeros(0, nn)
    key_cols: list[int] = []
    if dec_rows:
        _, piv_cols = rref_with_pivots(dec_mat)
        key_cols = list(piv_cols)
        square = QMat([[dec_mat.data[i][c] for c in key_cols] for i in range(len(dec_rows))])
        inv = square.inverse()
    gens = [ctx.unflatten(row) for row in stab.basis.data]
    ginv = gamma.inverse()
    field_rows: list[list[MPoly]] = []
    if d == 0:
        pm = PolyMat(len(gens), 0, [])
        model = AffineActionModel(coord_dim=0, generators=gens, vector_fields=pm)
        return ConjugationModelData(model=model, stabilizer=stab, complement_rows=comp_rows, nc=nc_basis)
    # xi-tilde = sum x_i F_i as a polynomial matrix
    xi = [[MPoly.zero(d) for _ in range(n)] for _ in range(n)]
    for i, row in enumerate(comp_rows):
        f = ctx.unflatten(row)
        for a in range(n):
            for b in range(n):
                v = f.data[a][b]
                if v != 0:
                    xi[a][b] = xi[a][b] + MPoly.var(d, i).scale(v)
    e_xi = _poly_matrix_exp(xi, n, d)
    nu_tilde = [
        [e_xi[i][j] - (MPoly.const(d, 1) if i == j else MPoly.zero(d)) for j in range(n)]
        for i in range(n)
    ]
    for z in gens:
        a_mat = _pm_from_qmat(ginv.matmul(z).matmul(gamma), d)
        z_pm = _pm_from_qmat(z, d)
        b_pm = [
            [
                _pm_dot_row_col(a_mat, e_xi, i, j, n) - _pm_dot_row_col(e_xi, z_pm, i, j, n)
                for j in range(n)
            ]
            for i in range(n)
        ]
        w = _dlog_first_order(nu_tilde, b_pm, n, d)
        w_flat = [w[i][j] for i in range(n) for j in range(n)]
        # w must lie in the span of n; decompose along (nc rows, comp rows)
        coeffs = []
        for r_idx in range(len(dec_rows)):
            acc = MPoly.zero(d)
            for c_pos, c in enumerate(key_cols):
                k = inv.data[c_pos][r_idx]
                if k != 0:
                    acc = acc + w_flat[c].scale(k)
            coeffs.append(acc)
        # consistency: w equals the recombination (membership in n)
        recon = [MPoly.zero(d) for _ in range(nn)]
        for cf, row in zip(coeffs, dec_rows):
            if not cf.is_zero():
                for j in range(nn):
                    v = row[j]
                    if v != 0:
                        recon[j] = recon[j] + cf.scale(v)
        if recon != w_flat:
            raise InvariantViolation("field motion leaves the nilradical span")
        field_rows.append(coeffs[nc_basis.dim :])
    pm = PolyMat.from_rows(field_rows) if field_rows else PolyMat(0, d, [])
    model = AffineActionModel(coord_dim=d, generators=gens, vector_fields=pm)
    return ConjugationModelData(model=model, stabilizer=stab, complement_rows=comp_rows, nc=nc_basis)


def _pm_dot_row_col(a, b, i, j, n):
    acc = None
    for k in range(n):
        e = a[i][k]
        f = b[k][j]
        if e.is_zero() or f.is_zero():
            continue
        t = e * f
        acc = t if acc is None else acc + t
    if acc is None:
        nv = a[0][0].num_vars
        return MPoly.zero(nv)
    return acc


# ---------------------------------------------------------------------------
# the determinant-type relative invariant on the grade-2 piece
# ---------------------------------------------------------------------------


@dataclass
class DKData:
    p: MPoly
    g2: Subspace
    gm2: Subspace
    g0: Subspace
    triple: LieTriple


def dk_invariant_p(triple: LieTriple) -> MPoly:
    return dk_data(triple).p


def dk_data(triple: LieTriple) -> DKData:
    """p(x) = det of (ad X)^2 : g_{-2} -> g_2 in the fixed RREF bases,
    where X = sum x_i A_i runs over the grade-2 piece."""
    grading = graded_decomposition(triple.h)
    n = grading.n
    ctx = GroupContext(n)
    g2 = grading.level(2)
    gm2 = grading.level(-2)
    g0 = grading.level(0)
    d = g2.dim
    if gm2.dim != d:
        raise PreconditionError("grade 2 and grade -2 pieces have different dimensions")
    if d == 0:
        return DKData(p=MPoly.const(0, 1), g2=g2, gm2=gm2, g0=g0, triple=triple)
    a_mats = [ctx.unflatten(r) for r in g2.basis.data]
    b_mats = [ctx.unflatten(r) for r in gm2.basis.data]
    # (ad X)^2 B_j with X = sum x_i A_i: coefficient of x_i x_k is [A_i,[A_k,B_j]]
    cols = []
    for j in range(d):
        acc = [MPoly.zero(d) for _ in range(d)]
        for i in range(d):
            for k in range(d):
                mat = bracket(a_mats[i], bracket(a_mats[k], b_mats[j]))
                coords = g2.coords_of(mat.flatten())
                if coords is None:
                    raise InvariantViolation("(ad X)^2 image leaves the grade-2 piece")
                mono = MPoly(d, {tuple(1 if t == i else 0 for t in range(d)): 1}) * MPoly(
                    d, {tuple(1 if t == k else 0 for t in range(d)): 1}
                )
                for r_i, cval in enumerate(coords):
                    if cval != 0:
                        acc[r_i] = acc[r_i] + mono.scale(cval)
        cols.append(acc)
    mat = PolyMat.from_rows([[cols[j][i] for j in range(d)] for i in range(d)])
    p = poly_det(mat)
    return DKData(p=p, g2=g2, gm2=gm2, g0=g0, triple=triple)


@dataclass
class CharacterLawReport:
    cases: int
    ok: bool


def _ad_on_subspace(l_mat: QMat, sub: Subspace, ctx: GroupContext) -> QMat:
    """Matrix of Ad(l) restricted to an Ad(l)-invariant subspace, in its
    stored basis."""
    linv = l_mat.inverse()
    cols = []
    for row in sub.basis.data:
        moved = l_mat.matmul(ctx.unflatten(row)).matmul(linv)
        coords = sub.coords_of(moved.flatten())
        if coords is None:
            raise InvariantViolation("subspace is not Ad(l)-invariant")
        cols.append(list(coords))
    return QMat(cols).transpose()


def random_levi_element(triple: LieTriple, rng, bound: int = 4) -> QMat:
    """Random invertible rational matrix commuting with H."""
    cent = centralizer_subspace(triple.h)
    n = triple.h.rows
    ctx = GroupContext(n)
    for _ in range(200):
        vec = cent.random_element(rng, bound)
        cand = ctx.unflatten(vec)
        if cand.det() != 0:
            return cand
    raise InvariantViolation("could not sample an invertible centralizer element")


def character_law_check(triple: LieTriple, trials: int = 25, seed: int = 0) -> CharacterLawReport:
    """p(Ad(l) X) = det(Ad_{g2}(l))^2 p(X) for random l in the Levi of H
    and random X in the grade-2 piece, exactly."""
    data = dk_data(triple)
    d = data.g2.dim
    ctx = GroupContext(triple.h.rows)
    if d == 0:
        return CharacterLawReport(cases=trials, ok=True)
    for t in range(trials):
        rng = stream(seed, "charlaw", t)
        l_mat = random_levi_element(triple, rng)
        ad2 = _ad_on_subspace(l_mat, data.g2, ctx)
        det2 = ad2.det()
        # X: the triple's own X on even trials, a random grade-2 element else
        if t % 2 == 0:
            x_vec = data.g2.coords_of(ctx.flatten(triple.x))
            if x_vec is None:
                raise InvariantViolation("triple X is not in its grade-2 piece")
        else:
            x_vec = tuple(Fraction(rng.randint(-5, 5)) for _ in range(d))
        x_mat = ctx.unflatten(data.g2.element(x_vec))
        moved = l_mat.matmul(x_mat).matmul(l_mat.inverse())
        moved_coords = data.g2.coords_of(moved.flatten())
        lhs = data.p.eval(moved_coords)
        rhs = det2 * det2 * data.p.eval(x_vec)
        if lhs != rhs:
            return CharacterLawReport(cases=t + 1, ok=False)
    return CharacterLawReport(cases=trials, ok=True)


@dataclass
class RegularityReport:
    hessian_rank_full: bool
    gradient_matches_triple: bool
    proportionality: Fraction | None

    @property
    def ok(self) -> bool:
        return self.hessian_rank_full and self.gradient_matches_triple


def regularity_check(triple: LieTriple, trials: int = 3, seed: int = 0) -> RegularityReport:
    """(a) the Hessian of log p has full rank at a generic point (regular
    prehomogeneous vector space); (b) the trace-form transport of the
    logarithmic gradient at the triple's X is proportional to the triple's
    Y solving [X, W] = H."""
    data = dk_data(triple)
    d = data.g2.dim
    if d == 0:
        return RegularityReport(
            hessian_rank_full=True, gradient_matches_triple=True, proportionality=None
        )
    p = data.p
    if p.is_zero():
        raise InvariantViolation("grade-2 invariant is identically zero")
    grads = [p.diff(i) for i in range(d)]
    hess = [[grads[i].diff(j) for j in range(d)] for i in range(d)]
    ctx = GroupContext(triple.h.rows)
    full = False
    for t in range(trials):
        rng = stream(seed, "hessian", t)
        point = tuple(Fraction(rng.randint(-6, 6)) for _ in range(d))
        pv = p.eval(point)
        if pv == 0:
            continue
        gv = [g.eval(point) for g in grads]
        mat = QMat(
            [
                [pv * hess[i][j].eval(point) - gv[i] * gv[j] for j in range(d)]
                for i in range(d)
            ]
        )
        if mat.det() != 0:
            full = True
            break
    # gradient transport at the triple's own X
    x_coords = data.g2.coords_of(ctx.flatten(triple.x))
    px = p.eval(x_coords)
    if px == 0:
        raise InvariantViolation("invariant vanishes at the triple's X")
    logderiv = [g.eval(x_coords) / px for g in grads]
    # find phi in g_{-2} with tr(phi * A_i) = logderiv_i
    a_mats = [ctx.unflatten(r) for r in data.g2.basis.data]
    b_mats = [ctx.unflatten(r) for r in data.gm2.basis.data]
    pairing = QMat(
        [[(b.matmul(a)).trace() for b in b_mats] for a in a_mats]
    )
    sol = solve_linear(pairing, logderiv)
    grad_ok = False
    prop = None
    if sol is not None:
        phi_vec = data.gm2.element(sol)
        # W solves [X, W] = H within g_{-2}: the triple's own Y qualifies
        y_coords = data.gm2.coords_of(ctx.flatten(triple.y))
        if y_coords is not None:
            # proportional?
            ratio = None
            consistent = True
            for a, b in zip(sol, y_coords):
                if b == 0 and a == 0:
                    continue
                if b == 0 or a == 0:
                    consistent = False
                    break
                r = Fraction(a) / Fraction(b)
                if ratio is None:
                    ratio = r
                elif ratio != r:
                    consistent = False
                    break
            if consistent and ratio is not None:
                grad_ok = True
                prop = ratio
    return RegularityReport(
        hessian_rank_full=full, gradient_matches_triple=grad_ok, proportionality=prop
    )


# ---------------------------------------------------------------------------
# equivariant fibrations
# ---------------------------------------------------------------------------


@dataclass
class FibrationReport:
    total: SpecialityReport
    quotient: SpecialityReport
    fiber: SpecialityReport | None
    prehom_equivalence: bool
    special_equivalence: bool

    @property
    def ok(self) -> bool:
        return self.prehom_equivalence and self.special_equivalence

    def to_json_obj(self):
        return {
            "total": self.total.to_json_obj(),
            "quotient": self.quotient.to_json_obj(),
            "fiber": self.fiber.to_json_obj() if self.fiber else None,
            "prehom_equivalence": self.prehom_equivalence,
            "special_equivalence": self.special_equivalence,
        }


def _substitute_fields(model: AffineActionModel, forms: list[MPoly], new_dim: int, keep: list[int]) -> list[list[MPoly]]:
    out = []
    for i in range(len(model.generators)):
        row = []
        for j in keep:
            row.append(model.vector_fields.entry(i, j).substitute_linear(forms))
        out.append(row)
    return out


def fibration_report(
    total: AffineActionModel,
    invariant_sub: Subspace,
    trials: int = 25,
    subset_budget: int = 5000,
    seed: int = 0,
) -> FibrationReport:
    """Prehomogeneity and speciality of the total space versus quotient and
    generic fiber of the linear projection killing invariant_sub.

    The invariant subspace must be preserved infinitesimally: in adapted
    coordinates the quotient components of every field must not involve
    the fiber variables (asserted)."""
    d = total.coord_dim
    if invariant_sub.ambient_dim != d:
        raise DimensionMismatchError("invariant subspace must live in the coordinate space")
    s = invariant_sub.dim
    total_report = is_special(total, trials, subset_budget, stream(seed, "t").randrange(1 << 30))
    if s == 0:
        quotient_report = total_report
        fiber_report = SpecialityReport(True, (), MPoly.const(0, 1), True)
        return FibrationReport(
            total=total_report,
            quotient=quotient_report,
            fiber=fiber_report,
            prehom_equivalence=total_report.open_orbit_found == quotient_report.open_orbit_found,
            special_equivalence=total_report.is_special == (quotient_report.is_special and fiber_report.is_special),
        )
    # adapted coordinates: x = C y_quot + S y_fib with C unit vectors on the
    # non-pivot coordinates of invariant_sub
    pivots = set(invariant_sub.pivots)
    comp_idx = [j for j in range(d) if j not in pivots]
    q = len(comp_idx)
    # forms: x_j in terms of new variables (y_quot_0..y_quot_{q-1}, y_fib_0..)
    forms = []
    for j in range(d):
        acc = MPoly.zero(d)
        if j in pivots:
            pass
        else:
            acc = acc + MPoly.var(d, comp_idx.index(j))
        for k, row in enumerate(invariant_sub.basis.data):
            v = row[j]
            if v != 0:
                acc = acc + MPoly.var(d, q + k).scale(v)
        forms.append(acc)
    # transformed fields: V'(y) = L^{-1} V(L y); build L columns
    l_cols = []
    for j in comp_idx:
        col = [_ZERO] * d
        col[j] = _ONE
        l_cols.append(col)
    for row in invariant_sub.basis.data:
        l_cols.append(list(row))
    l_mat = QMat(l_cols).transpose()
    l_inv = l_mat.inverse()
    new_rows = []
    for i in range(len(total.generators)):
        substituted = [
            total.vector_fields.entry(i, j).substitute_linear(forms) for j in range(d)
        ]
        row = []
        for a in range(d):
            acc = MPoly.zero(d)
            for b in range(d):
                v = l_inv.data[a][b]
                if v != 0:
                    acc = acc + substituted[b].scale(v)
            row.append(acc)
        new_rows.append(row)
    # quotient components (first q) must not involve fiber variables
    for row in new_rows:
        for a in range(q):
            for exp in row[a].terms:
                if any(exp[q + k] for k in range(s)):
                    raise PreconditionError(
                        "subspace is not invariant: quotient fields involve fiber variables"
                    )
    # quotient model: first q components, variables 0..q-1
    mapping = list(range(q)) + [0] * s  # fiber vars never occur in kept entries
    quot_fields = [
        [row[a].rename_vars(mapping, q) if q else MPoly.zero(0) for a in range(q)]
        for row in new_rows
    ]
    quotient = AffineActionModel(
        coord_dim=q,
        generators=list(total.generators),
        vector_fields=PolyMat.from_rows(quot_fields) if quot_fields else PolyMat(0, q, []),
    )
    quotient_report = is_special(quotient, trials, subset_budget, stream(seed, "q").randrange(1 << 30))
    fiber_report = None
    if quotient_report.open_orbit_found:
        eta = quotient_report.witness_point
        # stabilizer of eta: combinations with vanishing quotient fields at eta
        rows_at_eta = QMat(
            [[quot_fields[i][a].eval(eta) for a in range(q)] for i in range(len(total.generators))]
        ) if q else QMat.zeros(len(total.generators), 0)
        coeff_kernel = kernel_basis(rows_at_eta.transpose()) if q else Subspace.full(len(total.generators))
        fib_gens = []
        fib_rows = []
        fiber_mapping = [0] * q + list(range(s))
        for combo in coeff_kernel.basis.data:
            gen = QMat.zeros(total.generators[0].rows, total.generators[0].cols) if total.generators else None
            for cf, g in zip(combo, total.generators):
                if cf != 0:
                    gen = gen + g.scale(cf)
            fib_gens.append(gen)
            row = []
            assignment = {a: eta[a] for a in range(q)}
            for b in range(s):
                acc = MPoly.zero(d)
                for cf, i in zip(combo, range(len(total.generators))):
                    if cf != 0:
                        acc = acc + new_rows[i][q + b].scale(cf)
                acc = acc.eval_partial(assignment)
                row.append(acc.rename_vars(fiber_mapping, s))
            fib_rows.append(row)
        fiber = AffineActionModel(
            coord_dim=s,
            generators=fib_gens,
            vector_fields=PolyMat.from_rows(fib_rows) if fib_rows else PolyMat(0, s, []),
        )
        fiber_report = is_special(fiber, trials, subset_budget, stream(seed, "f").randrange(1 << 30))
    prehom_equiv = total_report.open_orbit_found == (
        quotient_report.open_orbit_found
        and (fiber_report.open_orbit_found if fiber_report else False)
    )
    special_equiv = total_report.is_special == (
        quotient_report.is_special and (fiber_report.is_special if fiber_report else False)
    )
    return FibrationReport(
        total=total_report,
        quotient=quotient_report,
        fiber=fiber_report,
        prehom_equivalence=prehom_equiv,
        special_equivalence=special_equiv,
    )


def bracket_action_model(act_basis: list[QMat], module: Subspace) -> AffineActionModel:
    """Linear action of a Lie algebra on an invariant subspace of gl_n by
    the bracket: the field of Z at x = sum x_j F_j is coords([Z, x])."""
    n = act_basis[0].rows if act_basis else 1
    ctx = GroupContext(n)
    d = module.dim
    f_mats = [ctx.unflatten(r) for r in module.basis.data]
    rows = []
    for z in act_basis:
        coeffs = [MPoly.zero(d) for _ in range(d)]
        for j, f in enumerate(f_mats):
            moved = bracket(z, f)
            coords = module.coords_of(moved.flatten())
            if coords is None:
                raise PreconditionError("module subspace is not invariant under the action")
            xj = MPoly.var(d, j)
            for i, cval in enumerate(coords):
                if cval != 0:
                    coeffs[i] = coeffs[i] + xj.scale(cval)
        rows.append(coeffs)
    return AffineActionModel(
        coord_dim=d,
        generators=list(act_basis),
        vector_fields=PolyMat.from_rows(rows) if rows else PolyMat(0, d, []),
    )
