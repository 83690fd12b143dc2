"""Conjugacy-class labels and induced classes for GL_n.

A class with rational spectrum is labeled by its (eigenvalue, Jordan type)
pairs.  Induction from a block Levi through the standard block-upper
parabolic is computed by exact randomized generic sampling: translate a
block-diagonal representative mu by exp(xi) for random integer xi in the
nilradical and read off the label.  Unanimity over the samples is demanded
for acceptance-grade runs; disagreement falls back to the dominance-maximal
label, which is the correct generic answer because the dense class
dominates every label occurring in the coset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ._rng import stream
from .errors import (
    DimensionMismatchError,
    GenericityError,
    InvariantViolation,
    PreconditionError,
)
from .liecore import (
    GroupContext,
    Partition,
    centralizer_dim,
    centralizer_subspace,
    eigen_decomposition,
    jordan_type,
    mult_jc,
    nilpotent_exp,
)
from .jmtriple import _restricted_matrix
from .ratmat import QMat, Subspace, solve_linear

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ClassLabel:
    """Conjugacy-class invariant: sorted (eigenvalue, partition) pairs."""

    pairs: tuple[tuple[Fraction, Partition], ...]

    def __post_init__(self):
        pairs = tuple(sorted(((Fraction(e), p) for e, p in self.pairs)))
        object.__setattr__(self, "pairs", pairs)
        eigs = [e for e, _ in pairs]
        if len(set(eigs)) != len(eigs):
            raise PreconditionError("class label eigenvalues must be distinct")

    @property
    def size(self) -> int:
        return sum(p.size for _, p in self.pairs)

    def eigenvalues(self) -> tuple[Fraction, ...]:
        return tuple(e for e, _ in self.pairs)

    def partition_at(self, eig: Fraction) -> Partition:
        for e, p in self.pairs:
            if e == eig:
                return p
        raise KeyError(f"no eigenvalue {eig} in label")

    def is_unipotent(self) -> bool:
        return len(self.pairs) == 1 and self.pairs[0][0] == 1

    def __str__(self):
        return "[" + ", ".join(f"({e}, {p})" for e, p in self.pairs) + "]"

    def to_json_obj(self):
        from .ratmat import rat_to_str

        return [[rat_to_str(e), list(p.parts)] for e, p in self.pairs]

    @staticmethod
    def from_json_obj(obj) -> "ClassLabel":
        return ClassLabel(
            tuple((Fraction(e), Partition(tuple(parts))) for e, parts in obj)
        )


@dataclass(frozen=True)
class LeviSpec:
    """Ordered block sizes of a standard (block upper triangular) parabolic."""

    composition: tuple[int, ...]

    def __post_init__(self):
        comp = tuple(int(b) for b in self.composition)
        object.__setattr__(self, "composition", comp)
        if not comp or any(b <= 0 for b in comp):
            raise PreconditionError("composition blocks must be positive")

    @property
    def n(self) -> int:
        return sum(self.composition)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out = [0]
        for b in self.composition:
            out.append(out[-1] + b)
        return tuple(out)

    def block_of(self, index: int) -> int:
        for k in range(len(self.composition)):
            if index < self.offsets[k + 1]:
                return k
        raise IndexError(index)

    def positions(self, kind: str) -> list[tuple[int, int]]:
        """Matrix positions of m (block diagonal), n (strict block upper),
        or p (block upper)."""
        out = []
        n = self.n
        for i in range(n):
            bi = self.block_of(i)
            for j in range(n):
                bj = self.block_of(j)
                if kind == "m" and bi == bj:
                    out.append((i, j))
                elif kind == "n" and bi < bj:
                    out.append((i, j))
                elif kind == "p" and bi <= bj:
                    out.append((i, j))
        return out

    def _span(self, kind: str) -> Subspace:
        n = self.n
        rows = []
        for (i, j) in self.positions(kind):
            v = [_ZERO] * (n * n)
            v[i * n + j] = _ONE
            rows.append(v)
        return Subspace.from_rows(n * n, rows)

    @cached_property
    def m_subspace(self) -> Subspace:
        return self._span("m")

    @cached_property
    def n_subspace(self) -> Subspace:
        return self._span("n")

    @cached_property
    def p_subspace(self) -> Subspace:
        return self._span("p")

    def in_p(self, g: QMat) -> bool:
        n = self.n
        if g.rows != n or g.cols != n:
            return False
        for i in range(n):
            for j in range(n):
                if self.block_of(i) > self.block_of(j) and g.data[i][j] != 0:
                    return False
        return True

    def block_diagonal_part(self, g: QMat) -> QMat:
        n = self.n
        return QMat(
            [
                [
                    g.data[i][j] if self.block_of(i) == self.block_of(j) else _ZERO
                    for j in range(n)
                ]
                for i in range(n)
            ]
        )

    def diagonal_blocks(self, g: QMat) -> list[QMat]:
        out = []
        for k, b in enumerate(self.composition):
            o = self.offsets[k]
            out.append(QMat([[g.data[o + i][o + j] for j in range(b)] for i in range(b)]))
        return out

    def random_nilradical_element(self, rng, bound: int) -> QMat:
        n = self.n
        rows = [[_ZERO] * n for _ in range(n)]
        for (i, j) in self.positions("n"):
            rows[i][j] = Fraction(rng.randint(-bound, bound))
        return QMat(rows)

    def random_p_element(self, rng, bound: int = 3) -> QMat:
        """Random invertible element of the standard parabolic."""
        n = self.n
        while True:
            rows = [[_ZERO] * n for _ in range(n)]
            for (i, j) in self.positions("p"):
                rows[i][j] = Fraction(rng.randint(-bound, bound))
            g = QMat(rows)
            blocks = self.diagonal_blocks(g)
            if all(b.det() != 0 for b in blocks):
                return g


@dataclass(frozen=True)
class MClassLabel:
    """A conjugacy class of the block Levi: one ClassLabel per block."""

    per_block: tuple[ClassLabel, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(lbl.size for lbl in self.per_block)

    def matches(self, levi: LeviSpec) -> bool:
        return self.sizes() == levi.composition

    def __str__(self):
        return " | ".join(str(lbl) for lbl in self.per_block)

    def to_json_obj(self):
        return [lbl.to_json_obj() for lbl in self.per_block]

    @staticmethod
    def from_json_obj(obj) -> "MClassLabel":
        return MClassLabel(tuple(ClassLabel.from_json_obj(o) for o in obj))


def trivial_m_class(levi: LeviSpec) -> MClassLabel:
    return MClassLabel(
        tuple(
            ClassLabel(((Fraction(1), Partition((1,) * b)),))
            for b in levi.composition
        )
    )


def regular_m_class(levi: LeviSpec) -> MClassLabel:
    return MClassLabel(
        tuple(ClassLabel(((Fraction(1), Partition((b,))),)) for b in levi.composition)
    )


@dataclass(frozen=True)
class InductionResult:
    label: ClassLabel
    samples_used: int
    unanimous: bool
    dominance_max_applied: bool

    def to_json_obj(self):
        return {
            "label": self.label.to_json_obj(),
            "samples_used": self.samples_used,
            "unanimous": self.unanimous,
            "dominance_max_applied": self.dominance_max_applied,
        }


def class_label(g: QMat) -> ClassLabel:
    """Complete conjugacy invariant of an invertible rational-spectrum
    element: eigenvalues of sigma with the Jordan type of nu on each
    eigenspace."""
    jc = mult_jc(g)
    pairs = []
    for lam, m, basis_cols in eigen_decomposition(jc.sigma):
        nu_res = _restricted_matrix(jc.nu, basis_cols)
        part = jordan_type(nu_res - QMat.identity(m))
        pairs.append((lam, part))
    label = ClassLabel(tuple(pairs))
    if label.size != g.rows:
        raise InvariantViolation("class label sizes do not sum to n")
    return label


def unipotent_block(partition: Partition) -> QMat:
    """Block-diagonal unipotent with the given Jordan type."""
    n = partition.size
    rows = [[_ZERO] * n for _ in range(n)]
    off = 0
    for k in partition.parts:
        for i in range(k):
            rows[off + i][off + i] = _ONE
        for i in range(k - 1):
            rows[off + i][off + i + 1] = _ONE
        off += k
    return QMat(rows)


def class_representative(label: ClassLabel) -> QMat:
    """Canonical block-diagonal representative of a class label."""
    blocks = []
    for eig, part in label.pairs:
        if eig == 0:
            raise PreconditionError("class labels of invertible elements need nonzero eigenvalues")
        blocks.append(unipotent_block(part).scale(eig))
    return block_diag(blocks)


def block_diag(blocks: list[QMat]) -> QMat:
    n = sum(b.rows for b in blocks)
    rows = [[_ZERO] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                rows[off + i][off + j] = b.data[i][j]
        off += b.rows
    return QMat(rows)


def m_class_representative(levi: LeviSpec, c: MClassLabel) -> QMat:
    if not c.matches(levi):
        raise PreconditionError("M-class block sizes do not match the Levi")
    return block_diag([class_representative(lbl) for lbl in c.per_block])


def _dominance_max(labels: list[ClassLabel]) -> ClassLabel:
    """Componentwise dominance maximum across labels with equal eigenvalue
    support; raises GenericityError on incomparable partitions."""
    support = labels[0].eigenvalues()
    for lbl in labels[1:]:
        if lbl.eigenvalues() != support:
            raise GenericityError(
                "samples disagree on eigenvalue support; genericity failure"
            )
    pairs = []
    for eig in support:
        parts = [lbl.partition_at(eig) for lbl in labels]
        best = parts[0]
        for p in parts[1:]:
            if p.dominates(best):
                best = p
            elif not best.dominates(p):
                raise GenericityError(
                    "dominance-incomparable labels; resample with a larger bound"
                )
        pairs.append((eig, best))
    return ClassLabel(tuple(pairs))


def induce(
    levi: LeviSpec,
    c: MClassLabel,
    samples: int = 7,
    seed: int = 0,
    bound: int = 10,
) -> InductionResult:
    """The class of G induced from the M-class c via the standard parabolic
    of the Levi, by exact generic sampling of mu exp(xi) over the
    nilradical."""
    if samples < 3:
        raise PreconditionError("induction sampling requires samples >= 3")
    mu = m_class_representative(levi, c)
    labels = []
    for s in range(samples):
        rng = stream(seed, "induce", s)
        xi = levi.random_nilradical_element(rng, bound)
        gamma = mu.matmul(nilpotent_exp(xi))
        labels.append(class_label(gamma))
    first = labels[0]
    if all(lbl == first for lbl in labels[1:]):
        return InductionResult(
            label=first, samples_used=samples, unanimous=True, dominance_max_applied=False
        )
    best = _dominance_max(labels)
    return InductionResult(
        label=best, samples_used=samples, unanimous=False, dominance_max_applied=True
    )


def padded_sum(parts_list: list[Partition]) -> Partition:
    """Componentwise sum of partitions padded with zeros."""
    length = max((len(p.parts) for p in parts_list), default=0)
    out = [0] * length
    for p in parts_list:
        for i, v in enumerate(p.parts):
            out[i] += v
    return Partition(tuple(v for v in out if v))


def richardson(levi: LeviSpec, samples: int = 7, seed: int = 0, bound: int = 10) -> InductionResult:
    """Induction of the trivial class, cross-checked against the dual
    partition of the sorted composition."""
    result = induce(levi, trivial_m_class(levi), samples, seed, bound)
    expected = Partition(tuple(sorted(levi.composition, reverse=True))).dual()
    got = result.label
    if got.pairs != ((Fraction(1), expected),):
        raise InvariantViolation(
            f"Richardson label {got} does not match dual partition {expected}"
        )
    return result


def sample_generic_element(
    levi: LeviSpec,
    c: MClassLabel,
    target: ClassLabel,
    seed: int,
    bound: int = 10,
    tries: int = 25,
) -> QMat:
    """A sampled element of mu N lying in the induced class (label equals
    target)."""
    mu = m_class_representative(levi, c)
    for t in range(tries):
        rng = stream(seed, "generic", t)
        xi = levi.random_nilradical_element(rng, bound)
        gamma = mu.matmul(nilpotent_exp(xi))
        if class_label(gamma) == target:
            return gamma
    raise GenericityError("no generic sample hit the induced class")


@dataclass(frozen=True)
class CodimReport:
    levi: LeviSpec
    m_class: MClassLabel
    induced: ClassLabel
    dim_m_centralizer: int
    dim_g_centralizer: int
    dim_p_centralizer: int
    dims_equal: bool
    centralizer_in_p: bool

    @property
    def ok(self) -> bool:
        return self.dims_equal and self.centralizer_in_p

    def to_json_obj(self):
        return {
            "levi": list(self.levi.composition),
            "m_class": self.m_class.to_json_obj(),
            "induced": self.induced.to_json_obj(),
            "dim_m_centralizer": self.dim_m_centralizer,
            "dim_g_centralizer": self.dim_g_centralizer,
            "dim_p_centralizer": self.dim_p_centralizer,
            "dims_equal": self.dims_equal,
            "centralizer_in_p": self.centralizer_in_p,
            "ok": self.ok,
        }


def check_codim(
    levi: LeviSpec,
    c: MClassLabel,
    samples: int = 7,
    seed: int = 0,
    bound: int = 10,
    induced: ClassLabel | None = None,
) -> CodimReport:
    """dim G_gamma = dim M_mu for generic gamma in mu N, and the centralizer
    of gamma is contained in p.  A precomputed induced label skips the
    sampling pass (the generic sample is still label-verified)."""
    if induced is None:
        induced = induce(levi, c, samples, seed, bound).label
    mu = m_class_representative(levi, c)
    gamma = sample_generic_element(levi, c, induced, seed, bound)
    dim_m = centralizer_dim(mu, levi.m_subspace)
    cent_g = centralizer_subspace(gamma)
    dim_g = cent_g.dim
    dim_p = centralizer_dim(gamma, levi.p_subspace)
    return CodimReport(
        levi=levi,
        m_class=c,
        induced=induced,
        dim_m_centralizer=dim_m,
        dim_g_centralizer=dim_g,
        dim_p_centralizer=dim_p,
        dims_equal=(dim_m == dim_g),
        centralizer_in_p=levi.p_subspace.contains(cent_g),
    )


def _permutations_of_composition(comp: tuple[int, ...]) -> list[tuple[int, ...]]:
    from itertools import permutations

    return sorted(set(permutations(comp)))


@dataclass(frozen=True)
class AssocReport:
    levi: LeviSpec
    m_class: MClassLabel
    base_label: ClassLabel
    permutation_labels: tuple[tuple[tuple[int, ...], ClassLabel], ...]
    chain_labels: tuple[tuple[tuple[int, ...], ClassLabel], ...]
    permutations_agree: bool
    chains_agree: bool

    @property
    def ok(self) -> bool:
        return self.permutations_agree and self.chains_agree

    def to_json_obj(self):
        return {
            "levi": list(self.levi.composition),
            "base_label": self.base_label.to_json_obj(),
            "permutations": [
                {"composition": list(comp), "label": lbl.to_json_obj()}
                for comp, lbl in self.permutation_labels
            ],
            "chains": [
                {"intermediate": list(comp), "label": lbl.to_json_obj()}
                for comp, lbl in self.chain_labels
            ],
            "ok": self.ok,
        }


def _merged_compositions(comp: tuple[int, ...]) -> list[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]]:
    """All one-step coarsenings: merge one adjacent pair of blocks.

    Returns (coarser composition, grouping) where grouping lists, per new
    block, the tuple of original block sizes it absorbs."""
    out = []
    k = len(comp)
    for i in range(k - 1):
        merged = comp[:i] + (comp[i] + comp[i + 1],) + comp[i + 2 :]
        grouping = tuple(
            (comp[j],) for j in range(i)
        ) + ((comp[i], comp[i + 1]),) + tuple((comp[j],) for j in range(i + 2, k))
        if len(merged) >= 2:
            out.append((merged, grouping))
    return out


def induce_in_levi(
    sub_comps: tuple[tuple[int, ...], ...],
    per_block_classes: tuple[tuple[ClassLabel, ...], ...],
    samples: int,
    seed: int,
    bound: int = 10,
) -> tuple[ClassLabel, ...]:
    """Induce within a product of GL factors: per factor, induce the listed
    classes through the standard parabolic of the sub-composition."""
    out = []
    for idx, (sc, cls) in enumerate(zip(sub_comps, per_block_classes)):
        sub_levi = LeviSpec(sc)
        res = induce(sub_levi, MClassLabel(cls), samples, seed * 1000003 + idx, bound)
        out.append(res.label)
    return tuple(out)


def check_assoc(
    levi: LeviSpec, c: MClassLabel, samples: int = 7, seed: int = 0, bound: int = 10
) -> AssocReport:
    """Independence of the induced class from the block order, and
    transitivity through every one-step intermediate Levi."""
    base = induce(levi, c, samples, seed, bound).label
    perm_results = []
    ok_perm = True
    pairs = list(zip(levi.composition, c.per_block))
    seen = set()
    from itertools import permutations as iperm

    for order in iperm(range(len(pairs))):
        comp = tuple(pairs[i][0] for i in order)
        if comp in seen:
            continue
        seen.add(comp)
        cls = tuple(pairs[i][1] for i in order)
        lbl = induce(LeviSpec(comp), MClassLabel(cls), samples, seed + 17, bound).label
        perm_results.append((comp, lbl))
        if lbl != base:
            ok_perm = False
    chain_results = []
    ok_chain = True
    for merged, grouping in _merged_compositions(levi.composition):
        # split the per-block classes along the grouping
        idx = 0
        intermediate_classes = []
        for group in grouping:
            k = len(group)
            cls = tuple(c.per_block[idx : idx + k])
            idx += k
            inner = induce_in_levi((group,), (cls,), samples, seed + 31, bound)
            intermediate_classes.append(inner[0])
        two_step = induce(
            LeviSpec(merged), MClassLabel(tuple(intermediate_classes)), samples, seed + 47, bound
        ).label
        chain_results.append((merged, two_step))
        if two_step != base:
            ok_chain = False
    return AssocReport(
        levi=levi,
        m_class=c,
        base_label=base,
        permutation_labels=tuple(perm_results),
        chain_labels=tuple(chain_results),
        permutations_agree=ok_perm,
        chains_agree=ok_chain,
    )


@dataclass(frozen=True)
class DescentReport:
    levi: LeviSpec
    m_class: MClassLabel
    sigma_eigenvalues: tuple[Fraction, ...]
    left: tuple[tuple[Fraction, Partition], ...]
    right: tuple[tuple[Fraction, Partition], ...]
    agree: bool

    @property
    def ok(self) -> bool:
        return self.agree

    def to_json_obj(self):
        from .ratmat import rat_to_str

        return {
            "levi": list(self.levi.composition),
            "sigma": [rat_to_str(e) for e in self.sigma_eigenvalues],
            "left": [[rat_to_str(e), list(p.parts)] for e, p in self.left],
            "right": [[rat_to_str(e), list(p.parts)] for e, p in self.right],
            "ok": self.agree,
        }


def check_descent(
    levi: LeviSpec, c: MClassLabel, samples: int = 7, seed: int = 0, bound: int = 10
) -> DescentReport:
    """Unipotent parts of the induced class at each eigenvalue of sigma
    equal the induction computed inside the centralizer of sigma.

    Requires c block-scalar: each block class has a single eigenvalue, so
    sigma = blockwise scalar matrix is the semisimple part of mu."""
    block_eigs = []
    for lbl in c.per_block:
        if len(lbl.pairs) != 1:
            raise PreconditionError(
                "descent check requires block-scalar sigma: one eigenvalue per block"
            )
        block_eigs.append(lbl.pairs[0][0])
    left_label = induce(levi, c, samples, seed, bound).label
    left = tuple(left_label.pairs)
    # group blocks by eigenvalue: G_sigma = prod GL_{m_lam}
    right = []
    for lam in sorted(set(block_eigs)):
        sub_comp = tuple(
            levi.composition[k] for k in range(len(levi.composition)) if block_eigs[k] == lam
        )
        sub_classes = tuple(
            ClassLabel(((Fraction(1), c.per_block[k].pairs[0][1]),))
            for k in range(len(levi.composition))
            if block_eigs[k] == lam
        )
        res = induce(LeviSpec(sub_comp), MClassLabel(sub_classes), samples, seed + 101, bound)
        if len(res.label.pairs) != 1 or res.label.pairs[0][0] != 1:
            raise InvariantViolation("unipotent induction produced a non-unipotent label")
        right.append((lam, res.label.pairs[0][1]))
    right = tuple(sorted(right))
    return DescentReport(
        levi=levi,
        m_class=c,
        sigma_eigenvalues=tuple(sorted(set(block_eigs))),
        left=left,
        right=right,
        agree=(left == right),
    )


def conjugation_displacement(delta: QMat, levi: LeviSpec) -> Subspace:
    """Image of (id - Ad(delta)) restricted to p, inside flattened gl_n."""
    if not levi.in_p(delta):
        raise PreconditionError("element is not block upper triangular for the Levi")
    n = levi.n
    ctx = GroupContext(n)
    dinv = delta.inverse()
    rows = []
    for row in levi.p_subspace.basis.data:
        z = ctx.unflatten(row)
        moved = z - delta.matmul(z).matmul(dinv)
        rows.append(moved.flatten())
    return Subspace.from_rows(n * n, rows)


def is_inflation_generic(delta: QMat, levi: LeviSpec) -> bool:
    """n contained in (id - Ad(delta)) p: membership test for the dense
    open subset of P formed by all inflations."""
    image = conjugation_displacement(delta, levi)
    return image.contains(levi.n_subspace)


def inflated_class_contains(delta: QMat, levi: LeviSpec, c: MClassLabel) -> bool:
    """delta lies in the inflation to P of the M-class c."""
    if not levi.in_p(delta):
        raise PreconditionError("element is not block upper triangular for the Levi")
    blocks = levi.diagonal_blocks(delta)
    if len(blocks) != len(c.per_block):
        return False
    for b, lbl in zip(blocks, c.per_block):
        if class_label(b) != lbl:
            return False
    return is_inflation_generic(delta, levi)


@dataclass(frozen=True)
class GNReport:
    levi: LeviSpec
    samples: int
    all_conjugate: bool

    @property
    def ok(self) -> bool:
        return self.all_conjugate

    def to_json_obj(self):
        return {
            "levi": list(self.levi.composition),
            "samples": self.samples,
            "ok": self.all_conjugate,
        }


def check_gn(delta: QMat, levi: LeviSpec, samples: int = 20, seed: int = 0, bound: int = 10) -> GNReport:
    """The semisimple part of every sampled element of delta N is
    N-conjugate to sigma, via an exact linear solve for the conjugator."""
    if not levi.in_p(delta):
        raise PreconditionError("element is not block upper triangular for the Levi")
    sigma = mult_jc(delta).sigma
    n = levi.n
    npos = levi.positions("n")
    ok = True
    for s in range(samples):
        rng = stream(seed, "gn", s)
        xi = levi.random_nilradical_element(rng, bound)
        x = delta.matmul(nilpotent_exp(xi))
        sigma_x = mult_jc(x).sigma
        # solve (I + Z) sigma = sigma_x (I + Z) for Z supported on n:
        # Z sigma - sigma_x Z = sigma_x - sigma, linear in the entries of Z
        cols = []
        for (i, j) in npos:
            z = QMat([[Fraction(1) if (a, b) == (i, j) else _ZERO for b in range(n)] for a in range(n)])
            cols.append((z.matmul(sigma) - sigma_x.matmul(z)).flatten())
        rhs = (sigma_x - sigma).flatten()
        if npos:
            sol = solve_linear(QMat(cols).transpose(), rhs)
        else:
            sol = () if all(v == 0 for v in rhs) else None
        if sol is None:
            ok = False
            continue
        z = QMat.zeros(n, n)
        rows = [[_ZERO] * n for _ in range(n)]
        for coeff, (i, j) in zip(sol, npos):
            rows[i][j] = coeff
        conj = QMat.identity(n) + QMat(rows)
        if conj.matmul(sigma) != sigma_x.matmul(conj):
            raise InvariantViolation("conjugator solve returned a non-solution")
    return GNReport(levi=levi, samples=samples, all_conjugate=ok)
