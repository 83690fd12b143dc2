"""The inflation / canonical-parabolic / speciality pipeline.

For an inflation-generic gamma in the standard parabolic P, the subalgebra
nc is computed as the largest p-invariant subspace of n intersected with
the canonical parabolic q of gamma (a deterministic fixed-point iteration,
cross-checked against randomized intersections with Ad(xi) q over random
xi in P).  The conjugation action of the coset stabilizer on
gamma N / exp(nc) is then modeled and its speciality decided by the
singular-locus gcd.  Verdicts are three-valued; algorithmic failure is
reported as inconclusive, never converted into evidence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ._rng import stream
from .errors import GenericityError, InvariantViolation, PreconditionError
from .jmtriple import canonical_parabolic_of_element
from .liecore import GroupContext, Partition, bracket, nilpotent_exp
from .orbits import (
    ClassLabel,
    LeviSpec,
    MClassLabel,
    class_label,
    is_inflation_generic,
    m_class_representative,
    regular_m_class,
    trivial_m_class,
)
from .prehomo import (
    ConjugationModelData,
    SpecialityReport,
    build_conjugation_model,
    is_special,
)
from .ratmat import QMat, Subspace, kernel_basis, subspace_intersect

_ZERO = Fraction(0)


@dataclass(frozen=True)
class NCResult:
    nc_basis: Subspace
    iterations: int
    randomized_confirmations: int


def largest_invariant_subspace(p_basis: Subspace, w0: Subspace) -> tuple[Subspace, int]:
    """Largest subspace W of w0 with [p, W] contained in W, by the standard
    fixed-point iteration W_{k+1} = {w in W_k : [p, w] in W_k}."""
    nn = w0.ambient_dim
    n = int(round(nn**0.5))
    ctx = GroupContext(n)
    p_mats = [ctx.unflatten(r) for r in p_basis.basis.data]
    w = w0
    iterations = 0
    while True:
        iterations += 1
        if w.dim == 0:
            return w, iterations
        w_mats = [ctx.unflatten(r) for r in w.basis.data]
        residual_cols = []
        for wm in w_mats:
            col = []
            for pm in p_mats:
                col.extend(w.reduce(bracket(pm, wm).flatten()))
            residual_cols.append(col)
        coeff_kernel = kernel_basis(QMat(residual_cols).transpose())
        if coeff_kernel.dim == w.dim:
            return w, iterations
        vectors = [w.element(c) for c in coeff_kernel.basis.data]
        w = Subspace.from_rows(nn, vectors)


def nc_subspace(
    gamma: QMat,
    levi: LeviSpec,
    confirmations: int = 20,
    seed: int = 0,
) -> NCResult:
    """The Lie algebra of N^C for an inflation-generic gamma in P.

    Deterministic definition: the largest p-invariant subspace of
    n intersect q(gamma); the randomized cross-check intersects
    n intersect q with Ad(xi) q for random xi in P and must agree."""
    if not is_inflation_generic(gamma, levi):
        raise PreconditionError(
            "gamma must be inflation-generic (member of the inflated class)"
        )
    n = levi.n
    ctx = GroupContext(n)
    q = canonical_parabolic_of_element(gamma).q
    w0 = subspace_intersect(levi.n_subspace, q)
    fixed, iterations = largest_invariant_subspace(levi.p_subspace, w0)
    # randomized soundness cross-check
    randomized = w0
    for t in range(confirmations):
        rng = stream(seed, "ncrand", t)
        xi = levi.random_p_element(rng)
        xinv = xi.inverse()
        moved_rows = [
            xi.matmul(ctx.unflatten(r)).matmul(xinv).flatten() for r in q.basis.data
        ]
        moved_q = Subspace.from_rows(n * n, moved_rows)
        randomized = subspace_intersect(randomized, moved_q)
        if randomized.dim == fixed.dim:
            break
    if randomized != fixed and not fixed.contains(randomized):
        raise InvariantViolation(
            "randomized intersection dropped below the fixed point"
        )
    if randomized.dim != fixed.dim:
        raise InvariantViolation(
            "randomized intersection did not reach the fixed point"
        )
    # ideal property: [p, nc] inside nc
    p_mats = [ctx.unflatten(r) for r in levi.p_subspace.basis.data]
    for r in fixed.basis.data:
        wm = ctx.unflatten(r)
        for pm in p_mats:
            if not fixed.contains_vector(bracket(pm, wm).flatten()):
                raise InvariantViolation("nc is not an ideal of p")
    return NCResult(
        nc_basis=fixed, iterations=iterations, randomized_confirmations=confirmations
    )


def sample_inflation_generic(
    levi: LeviSpec, c: MClassLabel, seed: int = 0, bound: int = 10, tries: int = 40
) -> QMat:
    """A sampled element of the inflation of c: mu exp(xi) passing the
    inflation-genericity membership test."""
    mu = m_class_representative(levi, c)
    for t in range(tries):
        rng = stream(seed, "inflgen", t)
        xi = levi.random_nilradical_element(rng, bound)
        gamma = mu.matmul(nilpotent_exp(xi))
        if is_inflation_generic(gamma, levi):
            return gamma
    raise GenericityError("no sampled coset element was inflation-generic")


@dataclass
class ConjectureVerdict:
    levi: LeviSpec
    m_class: MClassLabel
    class_name: str
    gamma_label: ClassLabel | None
    nc_dim: int | None
    quotient_dim: int | None
    speciality: SpecialityReport | None
    verdict: str  # special | not_special | inconclusive
    reason: str = ""

    def to_json_obj(self):
        return {
            "levi": list(self.levi.composition),
            "class_name": self.class_name,
            "m_class": self.m_class.to_json_obj(),
            "gamma_label": self.gamma_label.to_json_obj() if self.gamma_label else None,
            "nc_dim": self.nc_dim,
            "quotient_dim": self.quotient_dim,
            "speciality": self.speciality.to_json_obj() if self.speciality else None,
            "verdict": self.verdict,
            "reason": self.reason,
        }


@dataclass
class ConjectureCase:
    """Verdict plus the sampled data, kept for downstream fibration checks."""

    verdict: ConjectureVerdict
    gamma: QMat | None = None
    nc: NCResult | None = None
    model_data: ConjugationModelData | None = None


def conjecture_check(
    levi: LeviSpec,
    c: MClassLabel,
    samples: int = 7,
    seed: int = 0,
    bound: int = 10,
    class_name: str = "",
    trials: int = 25,
    subset_budget: int = 5000,
) -> ConjectureCase:
    """Full pipeline for one case: sample gamma in the inflation of c,
    compute nc, model the coset action on gamma N / N^C, decide
    speciality."""
    try:
        gamma = sample_inflation_generic(levi, c, seed, bound)
    except GenericityError as e:
        v = ConjectureVerdict(
            levi=levi, m_class=c, class_name=class_name, gamma_label=None,
            nc_dim=None, quotient_dim=None, speciality=None,
            verdict="inconclusive", reason=str(e),
        )
        return ConjectureCase(verdict=v)
    nc = nc_subspace(gamma, levi, confirmations=samples + 13, seed=seed)
    data = build_conjugation_model(gamma, levi.p_subspace, levi.n_subspace, nc.nc_basis)
    quotient_dim = data.model.coord_dim
    report = is_special(data.model, trials=trials, subset_budget=subset_budget, seed=seed)
    if not report.open_orbit_found:
        verdict = "inconclusive"
        reason = "no open orbit witness found"
    else:
        verdict = "special" if report.is_special else "not_special"
        reason = ""
    v = ConjectureVerdict(
        levi=levi,
        m_class=c,
        class_name=class_name,
        gamma_label=class_label(gamma),
        nc_dim=nc.nc_basis.dim,
        quotient_dim=quotient_dim,
        speciality=report,
        verdict=verdict,
        reason=reason,
    )
    return ConjectureCase(verdict=v, gamma=gamma, nc=nc, model_data=data)


def mixed_m_class(levi: LeviSpec) -> MClassLabel:
    """Catalog entry: one mixed semisimple-by-unipotent label per block
    shape, with small rational eigenvalues."""
    labels = []
    for b in levi.composition:
        if b == 1:
            labels.append(ClassLabel(((Fraction(2), Partition((1,))),)))
        else:
            labels.append(
                ClassLabel(
                    (
                        (Fraction(1), Partition((b - 1,))),
                        (Fraction(2), Partition((1,))),
                    )
                )
            )
    return MClassLabel(tuple(labels))


def class_catalog(levi: LeviSpec) -> list[tuple[str, MClassLabel]]:
    """Reproducible per-Levi class catalog: trivial, regular unipotent per
    block, one mixed label (deduplicated)."""
    entries = [
        ("trivial", trivial_m_class(levi)),
        ("regular", regular_m_class(levi)),
        ("mixed", mixed_m_class(levi)),
    ]
    seen = set()
    out = []
    for name, c in entries:
        key = tuple(tuple(lbl.pairs) for lbl in c.per_block)
        if key not in seen:
            seen.add(key)
            out.append((name, c))
    return out


@dataclass
class BatchResult:
    cases: list[ConjectureCase]
    n_max: int
    seed: int

    def summary(self) -> dict:
        counts = {"special": 0, "not_special": 0, "inconclusive": 0}
        for case in self.cases:
            counts[case.verdict.verdict] += 1
        return counts

    def to_json_obj(self):
        return {
            "schema_version": 1,
            "n_max": self.n_max,
            "seed": self.seed,
            "summary": self.summary(),
            "cases": [case.verdict.to_json_obj() for case in self.cases],
        }


def conjecture_batch(
    n_max: int = 4,
    seed: int = 0,
    samples: int = 7,
    bound: int = 10,
    trials: int = 25,
    subset_budget: int = 5000,
) -> BatchResult:
    """Run the conjecture harness over all compositions of n <= n_max and
    the class catalog.  Per-case errors downgrade that case to
    inconclusive with a reason."""
    from .liecore import compositions_of

    cases = []
    for n in range(1, n_max + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            for idx, (name, c) in enumerate(class_catalog(levi)):
                case_seed = stream(seed, "case", comp, name).randrange(1 << 30)
                try:
                    case = conjecture_check(
                        levi, c, samples, case_seed, bound,
                        class_name=name, trials=trials, subset_budget=subset_budget,
                    )
                except Exception as e:  # never convert failure into evidence
                    v = ConjectureVerdict(
                        levi=levi, m_class=c, class_name=name, gamma_label=None,
                        nc_dim=None, quotient_dim=None, speciality=None,
                        verdict="inconclusive", reason=f"{type(e).__name__}: {e}",
                    )
                    case = ConjectureCase(verdict=v)
                cases.append(case)
    return BatchResult(cases=cases, n_max=n_max, seed=seed)


def nc_defining_property_violations(
    gamma: QMat,
    levi: LeviSpec,
    nc: Subspace,
    translates: int = 10,
    seed: int = 0,
    bound: int = 5,
) -> list[str]:
    """Test that translating gamma along exp(nc) preserves both the class
    label and the canonical parabolic, whenever the translate stays in the
    induced class.  Returns human-readable descriptions of violations."""
    base_label = class_label(gamma)
    base_q = canonical_parabolic_of_element(gamma).q
    ctx = GroupContext(levi.n)
    out = []
    for t in range(translates):
        rng = stream(seed, "nctrans", t)
        vec = nc.random_element(rng, bound)
        xi = ctx.unflatten(vec)
        moved = gamma.matmul(nilpotent_exp(xi))
        lbl = class_label(moved)
        if lbl != base_label:
            # translate left the induced class: the property is conditional
            continue
        q2 = canonical_parabolic_of_element(moved).q
        if q2 != base_q:
            out.append(
                f"translate {t}: canonical parabolic moved (levi {levi.composition})"
            )
    return out
