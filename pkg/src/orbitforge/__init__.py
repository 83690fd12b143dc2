"""Exact computations with induced conjugacy classes, canonical parabolic
subgroups and prehomogeneous spaces for GL_n over the rationals."""

from .ratmat import (
    QMat,
    Rat,
    Subspace,
    kernel_basis,
    rref,
    solve_linear,
    subspace_intersect,
)
from .polyring import MPoly, PolyMat, mpoly_arith, mpoly_gcd, partial_derivative, poly_det
from .liecore import (
    GroupContext,
    JordanChevalley,
    Partition,
    ad_matrix,
    additive_jc,
    bracket,
    centralizer_dim,
    jordan_type,
    mult_jc,
    nilpotent_exp,
    nilpotent_log,
)
from .jmtriple import (
    GradedDecomp,
    LieTriple,
    ParabolicData,
    canonical_parabolic,
    canonical_parabolic_of_element,
    graded_decomposition,
    jm_triple,
)
from .orbits import (
    ClassLabel,
    InductionResult,
    LeviSpec,
    MClassLabel,
    check_assoc,
    check_codim,
    check_descent,
    check_gn,
    class_label,
    class_representative,
    induce,
    inflated_class_contains,
    is_inflation_generic,
    richardson,
)
from .prehomo import (
    AffineActionModel,
    SpecialityReport,
    build_conjugation_model,
    character_law_check,
    dk_invariant_p,
    fibration_report,
    is_special,
    open_orbit_test,
    regularity_check,
    singular_gcd,
)
from .conjecture import (
    ConjectureVerdict,
    NCResult,
    conjecture_batch,
    conjecture_check,
    nc_subspace,
)

__version__ = "0.1.0"
