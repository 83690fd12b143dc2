"""Umbrella invariant suites for the `verify` CLI command.

One named suite per Invariants & Properties bullet across the modules,
scaled by n_max.  A suite returns ok/detail instead of raising, so a
single run reports the status of everything.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ._rng import stream
from .conjecture import (
    class_catalog,
    conjecture_batch,
    nc_defining_property_violations,
    nc_subspace,
    sample_inflation_generic,
)
from .jmtriple import canonical_parabolic, graded_decomposition, jm_triple
from .liecore import (
    GroupContext,
    Partition,
    ad_matrix,
    bracket,
    centralizer_dim,
    centralizer_dim_formula,
    centralizer_subspace,
    compositions_of,
    jordan_type,
    mult_jc,
    nilpotent_exp,
    partitions_of,
)
from .orbits import (
    LeviSpec,
    class_label,
    induce,
    m_class_representative,
    padded_sum,
    regular_m_class,
    sample_generic_element,
    trivial_m_class,
)
from .polyring import MPoly, PolyMat, divide_exact, mpoly_gcd, poly_det
from .prehomo import bracket_action_model, build_conjugation_model, dk_data, is_special, open_orbit_test
from .ratmat import QMat, Subspace, kernel_basis, rref, rref_with_pivots, subspace_intersect


@dataclass
class SuiteResult:
    name: str
    ok: bool
    detail: str


def _random_qmat(rng, rows, cols, bound=5) -> QMat:
    return QMat([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def _random_invertible(rng, n, bound=3) -> QMat:
    while True:
        m = _random_qmat(rng, n, n, bound)
        if m.det() != 0:
            return m


def _random_nilpotent(rng, n) -> QMat:
    parts = partitions_of(n)
    p = parts[rng.randrange(len(parts))]
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for k in p.parts:
        for i in range(k - 1):
            rows[off + i][off + i + 1] = Fraction(1)
        off += k
    base = QMat(rows)
    g = _random_invertible(rng, n)
    return g.matmul(base).matmul(g.inverse())


def _canonical_nilpotent(p: Partition) -> QMat:
    n = p.size
    rows = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for k in p.parts:
        for i in range(k - 1):
            rows[off + i][off + i + 1] = Fraction(1)
        off += k
    return QMat(rows)


def _randpoly(rng, nv, deg, terms) -> MPoly:
    p = MPoly.zero(nv)
    for _ in range(terms):
        e = tuple(rng.randint(0, deg) for _ in range(nv))
        p = p + MPoly(nv, {e: rng.randint(-4, 4)})
    return p


# ---------------------------------------------------------------------------


def suite_rref_idempotent(seed) -> SuiteResult:
    rng = stream(seed, "rref")
    for t in range(30):
        m = _random_qmat(rng, rng.randint(1, 6), rng.randint(1, 6))
        r = rref(m)
        if rref(r) != r:
            return SuiteResult("ratmat/rref-idempotent", False, f"failed on trial {t}")
    return SuiteResult("ratmat/rref-idempotent", True, "30 random matrices")


def suite_kernel(seed) -> SuiteResult:
    rng = stream(seed, "kernel")
    for t in range(30):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_qmat(rng, rows, cols)
        kb = kernel_basis(m)
        _, piv = rref_with_pivots(m)
        if kb.dim + len(piv) != cols:
            return SuiteResult("ratmat/kernel", False, "rank-nullity failed")
        for v in kb.basis.data:
            prod = [sum(m.data[i][j] * v[j] for j in range(cols)) for i in range(rows)]
            if any(x != 0 for x in prod):
                return SuiteResult("ratmat/kernel", False, "kernel vector not annihilated")
    return SuiteResult("ratmat/kernel", True, "rank-nullity and annihilation, 30 trials")


def suite_intersect_lattice(seed) -> SuiteResult:
    rng = stream(seed, "intersect")
    dim = 16
    for t in range(10):
        subs = []
        for _ in range(3):
            k = rng.randint(0, 6)
            subs.append(
                Subspace.from_rows(dim, [[rng.randint(-3, 3) for _ in range(dim)] for _ in range(k)])
            )
        a, b, c = subs
        if subspace_intersect(a, b) != subspace_intersect(b, a):
            return SuiteResult("ratmat/intersect", False, "not commutative")
        lhs = subspace_intersect(subspace_intersect(a, b), c)
        rhs = subspace_intersect(a, subspace_intersect(b, c))
        if lhs != rhs:
            return SuiteResult("ratmat/intersect", False, "not associative")
        if subspace_intersect(a, a) != a:
            return SuiteResult("ratmat/intersect", False, "not idempotent")
    return SuiteResult("ratmat/intersect", True, "commutative, associative, idempotent in dim 16")


def suite_gcd_divides(seed) -> SuiteResult:
    rng = stream(seed, "gcd")
    checked = 0
    for t in range(12):
        a = _randpoly(rng, 3, 2, 3)
        b = _randpoly(rng, 3, 2, 3)
        if a.is_zero() or b.is_zero():
            continue
        g = mpoly_gcd(a, b)
        if divide_exact(a, g) is None or divide_exact(b, g) is None:
            return SuiteResult("polyring/gcd-divides", False, f"gcd does not divide on trial {t}")
        checked += 1
    return SuiteResult("polyring/gcd-divides", True, f"{checked} random pairs")


def suite_polydet_eval(seed) -> SuiteResult:
    rng = stream(seed, "polydet")
    for t in range(4):
        size = rng.randint(2, 5)
        ents = [_randpoly(rng, 2, 1, 2) for _ in range(size * size)]
        pm = PolyMat(size, size, ents)
        d = poly_det(pm)
        for _ in range(10):
            pt = [rng.randint(-5, 5) for _ in range(2)]
            if pm.eval_at(pt).det() != d.eval(pt):
                return SuiteResult("polyring/det-eval", False, "scalar/polynomial determinant mismatch")
    return SuiteResult("polyring/det-eval", True, "10 random points per matrix, 4 matrices")


def suite_leibniz(seed) -> SuiteResult:
    rng = stream(seed, "leibniz")
    for t in range(12):
        a = _randpoly(rng, 3, 2, 3)
        b = _randpoly(rng, 3, 2, 3)
        for v in range(3):
            if (a * b).diff(v) != a.diff(v) * b + a * b.diff(v):
                return SuiteResult("polyring/leibniz", False, f"failed on trial {t}")
    return SuiteResult("polyring/leibniz", True, "12 random pairs, all variables")


def suite_jordan_conjugation(seed, n_max) -> SuiteResult:
    rng = stream(seed, "jtype")
    for n in range(2, n_max + 2):
        for _ in range(6):
            x = _random_nilpotent(rng, n)
            g = _random_invertible(rng, n)
            if jordan_type(g.matmul(x).matmul(g.inverse())) != jordan_type(x):
                return SuiteResult("liecore/jordan-conjugation", False, f"n={n}")
    return SuiteResult("liecore/jordan-conjugation", True, f"random conjugates, n <= {n_max + 1}")


def suite_mult_jc(seed, n_max) -> SuiteResult:
    rng = stream(seed, "jc")
    for n in range(2, n_max + 1):
        for _ in range(6):
            d = [rng.choice([1, 2, 3]) for _ in range(n)]
            u = QMat(
                [
                    [Fraction(1) if i == j else Fraction(rng.randint(-2, 2)) if j > i else Fraction(0) for j in range(n)]
                    for i in range(n)
                ]
            )
            g0 = QMat.diag(d).matmul(u)
            c = _random_invertible(rng, n)
            g = c.matmul(g0).matmul(c.inverse())
            jc = mult_jc(g)  # internal asserts cover the invariants
            if jc.sigma.matmul(jc.nu) != g:
                return SuiteResult("liecore/mult-jc", False, "product mismatch")
    return SuiteResult("liecore/mult-jc", True, "decomposition invariants on random elements")


def suite_ad_homomorphism(seed, n_max) -> SuiteResult:
    rng = stream(seed, "adhom")
    for n in range(2, min(n_max, 4) + 1):
        for _ in range(4):
            a = _random_qmat(rng, n, n, 3)
            b = _random_qmat(rng, n, n, 3)
            lhs = ad_matrix(bracket(a, b))
            rhs = ad_matrix(a).matmul(ad_matrix(b)) - ad_matrix(b).matmul(ad_matrix(a))
            if lhs != rhs:
                return SuiteResult("liecore/ad-bracket", False, f"n={n}")
    return SuiteResult("liecore/ad-bracket", True, "ad is a Lie algebra map, random pairs")


def suite_centralizer_formula(seed, n_max) -> SuiteResult:
    for n in range(2, n_max + 2):
        for p in partitions_of(n):
            x = _canonical_nilpotent(p)
            if centralizer_dim(x) != centralizer_dim_formula(p):
                return SuiteResult("liecore/centralizer-formula", False, f"{p}")
    return SuiteResult(
        "liecore/centralizer-formula", True, f"solve vs dual-partition formula, n <= {n_max + 1}"
    )


def suite_triple_relations(seed, n_max) -> SuiteResult:
    rng = stream(seed, "triples")
    count = 0
    for n in range(1, n_max + 2):
        for p in partitions_of(n):
            jm_triple(_canonical_nilpotent(p)).validate()
            count += 1
        for _ in range(8):
            jm_triple(_random_nilpotent(rng, n), stream(seed, "trip", n)).validate()
            count += 8
    return SuiteResult("jmtriple/relations", True, f"{count} triples validated, n <= {n_max + 1}")


def suite_parabolic_independence(seed, n_max) -> SuiteResult:
    rng = stream(seed, "indep")
    for n in range(2, n_max + 2):
        for t in range(4):
            x = _random_nilpotent(rng, n)
            pa = canonical_parabolic(jm_triple(x, stream(seed, "ja", n, t)))
            pb = canonical_parabolic(jm_triple(x, stream(seed, "jb", n, t)))
            if (pa.q, pa.u, pa.uprime) != (pb.q, pb.u, pb.uprime):
                return SuiteResult("jmtriple/independence", False, f"n={n}")
    return SuiteResult(
        "jmtriple/independence", True, f"randomized Jordan bases agree on q, u, u', n <= {n_max + 1}"
    )


def suite_self_normalizing(seed, n_max) -> SuiteResult:
    rng = stream(seed, "selfnorm")
    for n in range(2, min(n_max, 4) + 1):
        x = _random_nilpotent(rng, n)
        pd = canonical_parabolic(jm_triple(x))
        ctx = GroupContext(n)
        q_mats = [ctx.unflatten(r) for r in pd.q.basis.data]
        residual_cols = []
        for i in range(n * n):
            e = ctx.unflatten([1 if k == i else 0 for k in range(n * n)])
            col = []
            for qm in q_mats:
                col.extend(pd.q.reduce(bracket(e, qm).flatten()))
            residual_cols.append(col)
        normalizer = kernel_basis(QMat(residual_cols).transpose())
        vecs = [
            [(Fraction(1) if k == i else Fraction(0)) for k in range(n * n)]
            for i in range(n * n)
        ]
        norm_rows = []
        for c in normalizer.basis.data:
            acc = [Fraction(0)] * (n * n)
            for cf, v in zip(c, vecs):
                if cf:
                    acc = [x0 + cf * y for x0, y in zip(acc, v)]
            norm_rows.append(acc)
        norm_sub = Subspace.from_rows(n * n, norm_rows)
        if norm_sub != pd.q:
            return SuiteResult("jmtriple/self-normalizing", False, f"n={n}")
    return SuiteResult("jmtriple/self-normalizing", True, "normalizer of q equals q")


def suite_grading_symmetry(seed, n_max) -> SuiteResult:
    rng = stream(seed, "gradsym")
    for n in range(2, n_max + 2):
        x = _random_nilpotent(rng, n)
        t = jm_triple(x)
        grading = graded_decomposition(t.h)
        for k, sub in grading.levels.items():
            if grading.level(-k).dim != sub.dim:
                return SuiteResult("jmtriple/grading-symmetry", False, f"n={n}, k={k}")
        # ad X maps level 0 onto level 2
        ctx = GroupContext(n)
        g0, g2 = grading.level(0), grading.level(2)
        image_rows = [bracket(t.x, ctx.unflatten(r)).flatten() for r in g0.basis.data]
        img = Subspace.from_rows(n * n, image_rows)
        if not img.contains(g2):
            return SuiteResult("jmtriple/grading-symmetry", False, f"ad X not onto level 2, n={n}")
    return SuiteResult(
        "jmtriple/grading-symmetry", True, "dim g_k = dim g_-k and ad X onto level 2"
    )


def suite_induce_seed_free(seed, n_max) -> SuiteResult:
    top = min(n_max + 1, 5)
    for n in range(1, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            for c in (trivial_m_class(levi), regular_m_class(levi)):
                r1 = induce(levi, c, 5, seed + 2, bound=1000)
                r2 = induce(levi, c, 5, seed + 3, bound=1000)
                if not (r1.unanimous and r2.unanimous):
                    return SuiteResult("orbits/seed-free", False, f"non-unanimous at {comp}")
                if r1.label != r2.label:
                    return SuiteResult("orbits/seed-free", False, f"seed-dependent at {comp}")
    return SuiteResult("orbits/seed-free", True, f"two seeds agree, compositions n <= {top}")


def suite_richardson_dual(seed, n_max) -> SuiteResult:
    top = min(n_max + 3, 7)
    for n in range(1, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            r = induce(levi, trivial_m_class(levi), 7, seed, bound=1000)
            expected = Partition(tuple(sorted(comp, reverse=True))).dual()
            if not r.unanimous or r.label.pairs != ((Fraction(1), expected),):
                return SuiteResult("orbits/richardson-dual", False, f"{comp}")
    return SuiteResult("orbits/richardson-dual", True, f"dual-partition law, n <= {top}")


def suite_partition_sum(seed, n_max) -> SuiteResult:
    top = min(n_max + 2, 6)
    cases = 0
    for n in range(1, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            partsets = [partitions_of(b) for b in comp]
            for combo in itertools.product(*partsets):
                from .orbits import ClassLabel, MClassLabel

                c = MClassLabel(tuple(ClassLabel(((Fraction(1), p),)) for p in combo))
                r = induce(levi, c, 7, seed, bound=1000)
                expected = padded_sum(list(combo))
                if not r.unanimous or r.label.pairs != ((Fraction(1), expected),):
                    return SuiteResult("orbits/partition-sum", False, f"{comp} {combo}")
                cases += 1
    return SuiteResult("orbits/partition-sum", True, f"{cases} cases, n <= {top}")


def suite_monotone_bound(seed, n_max) -> SuiteResult:
    top = min(n_max, 4)
    for n in range(2, top + 1):
        for comp in compositions_of(n)[:4]:
            levi = LeviSpec(comp)
            labels = []
            for bound in (1000, 10000, 100000):
                r = induce(levi, trivial_m_class(levi), 5, seed, bound=bound)
                if not r.unanimous:
                    return SuiteResult("orbits/monotone-bound", False, f"non-unanimous at B={bound}")
                labels.append(r.label)
            if len(set(labels)) != 1:
                return SuiteResult("orbits/monotone-bound", False, f"{comp}: label changed with B")
    return SuiteResult("orbits/monotone-bound", True, "labels stable across B in {1e3,1e4,1e5}")


def suite_codim_p_centralizer(seed, n_max) -> SuiteResult:
    top = min(n_max, 4)
    for n in range(2, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            c = trivial_m_class(levi)
            r = induce(levi, c, 5, seed, bound=1000)
            for t in range(2):
                gamma = sample_generic_element(levi, c, r.label, seed + t, bound=1000)
                dim_g = centralizer_dim(gamma)
                dim_p = centralizer_dim(gamma, levi.p_subspace)
                if dim_g != dim_p:
                    return SuiteResult("orbits/p-centralizer", False, f"{comp}")
    return SuiteResult(
        "orbits/p-centralizer", True, "centralizer dims in p equal those in gl_n"
    )


def suite_model_bracket_compat(seed, n_max) -> SuiteResult:
    top = min(n_max, 4)
    for n in range(2, top + 1):
        comp = (1,) * n
        levi = LeviSpec(comp)
        gamma = sample_inflation_generic(levi, trivial_m_class(levi), seed)
        data = build_conjugation_model(gamma, levi.p_subspace, levi.n_subspace, Subspace.zero(n * n))
        data.model.validate_bracket_compatibility()
    return SuiteResult("prehomo/bracket-compat", True, "conjugation models on Borel cosets")


def suite_gcd_basis_invariance(seed, n_max) -> SuiteResult:
    from .prehomo import singular_gcd

    rng = stream(seed, "basisinv")
    n = min(n_max, 4)
    x = _canonical_nilpotent(Partition((n,)))
    t = jm_triple(x)
    grading = graded_decomposition(t.h)
    ctx = GroupContext(n)
    gens = [ctx.unflatten(r) for r in grading.level(0).basis.data]
    model = bracket_action_model(gens, grading.level(2))
    g1 = singular_gcd(model, seed=seed)
    k = len(gens)
    m = _random_invertible(rng, k)
    new_gens = []
    for i in range(k):
        acc = QMat.zeros(n, n)
        for j in range(k):
            if m.data[i][j] != 0:
                acc = acc + gens[j].scale(m.data[i][j])
        new_gens.append(acc)
    model2 = bracket_action_model(new_gens, grading.level(2))
    g2 = singular_gcd(model2, seed=seed)
    if g1 != g2:
        return SuiteResult("prehomo/gcd-basis-invariance", False, "gcd changed under basis change")
    return SuiteResult("prehomo/gcd-basis-invariance", True, "monic gcd stable under generator change")


def suite_speciality_catalog(seed, n_max) -> SuiteResult:
    from .prehomo import AffineActionModel

    # point
    point = AffineActionModel(0, [], PolyMat(0, 0, []))
    if not is_special(point, seed=seed).is_special:
        return SuiteResult("prehomo/catalog", False, "point not special")
    # single-coordinate torus scaling
    torus = AffineActionModel(1, [QMat.diag([1, 0])], PolyMat(1, 1, [MPoly.var(1, 0)]))
    rep = is_special(torus, seed=seed)
    if rep.is_special or rep.singular_gcd != MPoly.var(1, 0):
        return SuiteResult("prehomo/catalog", False, "torus scaling misjudged")
    # grade-2 of the regular nilpotent
    for n in range(2, min(n_max + 1, 5) + 1):
        t = jm_triple(_canonical_nilpotent(Partition((n,))))
        grading = graded_decomposition(t.h)
        ctx = GroupContext(n)
        gens = [ctx.unflatten(r) for r in grading.level(0).basis.data]
        model = bracket_action_model(gens, grading.level(2))
        rep = is_special(model, seed=seed)
        expected = MPoly.const(n - 1, 1)
        for i in range(n - 1):
            expected = expected * MPoly.var(n - 1, i)
        if rep.is_special or rep.singular_gcd != expected:
            return SuiteResult("prehomo/catalog", False, f"grade-2 regular gl_{n}")
    return SuiteResult("prehomo/catalog", True, "point, torus, grade-2 of regular nilpotents")


def suite_dk_nonzero(seed, n_max) -> SuiteResult:
    from .prehomo import character_law_check

    top = min(n_max + 1, 5)
    ctx_cases = 0
    for n in range(1, top + 1):
        for p in partitions_of(n):
            t = jm_triple(_canonical_nilpotent(p))
            data = dk_data(t)
            if data.g2.dim:
                ctx = GroupContext(n)
                coords = data.g2.coords_of(ctx.flatten(t.x))
                if coords is None or data.p.eval(coords) == 0:
                    return SuiteResult("prehomo/dk-nonzero", False, f"{p}")
            if not character_law_check(t, trials=6, seed=seed).ok:
                return SuiteResult("prehomo/dk-nonzero", False, f"character law {p}")
            ctx_cases += 1
    return SuiteResult("prehomo/dk-nonzero", True, f"{ctx_cases} partitions, n <= {top}")


def suite_nc_soundness(seed, n_max) -> SuiteResult:
    top = min(n_max, 4)
    for n in range(1, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            for name, c in class_catalog(levi):
                gamma = sample_inflation_generic(levi, c, seed)
                nc_subspace(gamma, levi, confirmations=20, seed=seed)  # raises on mismatch
    return SuiteResult(
        "conjecture/nc-fixed-point", True, "fixed point = randomized intersection, ideal of p"
    )


def suite_nc_equivariance(seed, n_max) -> SuiteResult:
    rng = stream(seed, "equivar")
    top = min(n_max, 4)
    for n in range(2, top + 1):
        for comp in compositions_of(n)[:4]:
            levi = LeviSpec(comp)
            c = trivial_m_class(levi)
            gamma1 = sample_inflation_generic(levi, c, seed)
            nc1 = nc_subspace(gamma1, levi, confirmations=8, seed=seed).nc_basis
            p = levi.random_p_element(rng)
            gamma2 = p.matmul(gamma1).matmul(p.inverse())
            if not levi.in_p(gamma2):
                continue
            nc2 = nc_subspace(gamma2, levi, confirmations=8, seed=seed + 5).nc_basis
            if nc1.dim != nc2.dim:
                return SuiteResult("conjecture/nc-equivariance", False, f"{comp}: dims differ")
            ctx = GroupContext(n)
            moved_rows = [
                p.matmul(ctx.unflatten(r)).matmul(p.inverse()).flatten() for r in nc1.basis.data
            ]
            if Subspace.from_rows(n * n, moved_rows) != nc2:
                return SuiteResult("conjecture/nc-equivariance", False, f"{comp}: Ad(p) nc mismatch")
    return SuiteResult("conjecture/nc-equivariance", True, "Ad(p)-equivariance across conjugates")


def suite_nc_defining_property(seed, n_max) -> SuiteResult:
    top = min(n_max, 4)
    violations = []
    for n in range(1, top + 1):
        for comp in compositions_of(n):
            levi = LeviSpec(comp)
            for name, c in class_catalog(levi):
                gamma = sample_inflation_generic(levi, c, seed)
                nc = nc_subspace(gamma, levi, confirmations=8, seed=seed).nc_basis
                v = nc_defining_property_violations(gamma, levi, nc, translates=6, seed=seed)
                if v:
                    violations.append(f"{comp}/{name}")
    if violations:
        return SuiteResult(
            "conjecture/nc-defining-property",
            False,
            "canonical parabolic moves under nc-translates: " + ", ".join(violations),
        )
    return SuiteResult("conjecture/nc-defining-property", True, "translates preserve the parabolic")


def suite_quotient_prehomogeneous(seed, n_max) -> SuiteResult:
    batch = conjecture_batch(n_max=min(n_max, 4), seed=seed)
    counts = batch.summary()
    if counts["inconclusive"]:
        return SuiteResult(
            "conjecture/quotient-prehom", False, f"{counts['inconclusive']} inconclusive cases"
        )
    for case in batch.cases:
        if case.model_data is not None:
            found, _ = open_orbit_test(case.model_data.model, seed=seed)
            if not found:
                return SuiteResult(
                    "conjecture/quotient-prehom", False, f"{case.verdict.levi.composition}"
                )
    return SuiteResult(
        "conjecture/quotient-prehom", True, f"open orbit on every case model; {counts}"
    )


def run_all(n_max: int = 4, seed: int = 1) -> list[SuiteResult]:
    suites = [
        suite_rref_idempotent(seed),
        suite_kernel(seed),
        suite_intersect_lattice(seed),
        suite_gcd_divides(seed),
        suite_polydet_eval(seed),
        suite_leibniz(seed),
        suite_jordan_conjugation(seed, n_max),
        suite_mult_jc(seed, n_max),
        suite_ad_homomorphism(seed, n_max),
        suite_centralizer_formula(seed, n_max),
        suite_triple_relations(seed, n_max),
        suite_parabolic_independence(seed, n_max),
        suite_self_normalizing(seed, n_max),
        suite_grading_symmetry(seed, n_max),
        suite_induce_seed_free(seed, n_max),
        suite_richardson_dual(seed, n_max),
        suite_partition_sum(seed, n_max),
        suite_monotone_bound(seed, n_max),
        suite_codim_p_centralizer(seed, n_max),
        suite_model_bracket_compat(seed, n_max),
        suite_gcd_basis_invariance(seed, n_max),
        suite_speciality_catalog(seed, n_max),
        suite_dk_nonzero(seed, n_max),
        suite_nc_soundness(seed, n_max),
        suite_nc_equivariance(seed, n_max),
        suite_nc_defining_property(seed, n_max),
        suite_quotient_prehomogeneous(seed, n_max),
    ]
    return suites
