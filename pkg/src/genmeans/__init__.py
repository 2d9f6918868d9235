"""Finite-truncation operator algebra for mean-difference sequence spaces.

Triangular matrix algebra over exact-rational and float backends, the
weighted-mean / difference operator constructions with closed-form inverses,
Schauder basis and dual machinery, a matrix-class condition catalog, and
Hausdorff-noncompactness gauges — everything computed on finite windows with
declared tail behavior.
"""

from .scalars import Backend, DEFAULT_TOLERANCE, FLOAT64, RATIONAL, backend_for
from .errors import (
    DimensionError,
    GenmeansError,
    GuardError,
    InconsistencyError,
    ParameterError,
    SchemaError,
    SingularTriangleError,
    TailError,
)
from .triangle import (
    CoeffWindow,
    MatrixWindow,
    SequenceWindow,
    TriangleMatrix,
    STRUCTURAL_TAIL,
    UNKNOWN_TAIL,
    ZERO_TAIL,
    apply,
    as_window,
    binom,
    coeff_via_determinant,
    compose,
    identity,
    invert_triangle,
    ones_sequence,
    seq_add,
    seq_scale,
    seq_sub,
    toeplitz_inverse_coeffs,
    unit_sequence,
    window_apply,
    zero_sequence,
)
from .operators import (
    NormResult,
    ParameterTriple,
    PresetSpec,
    PRESET_NAMES,
    check_params,
    composite_entry,
    difference_inverse,
    difference_matrix,
    identity_triple,
    inverse_transform,
    mean_difference_inverse,
    mean_difference_matrix,
    preset,
    space_norm,
    transform,
    validate_params,
    weighted_mean_inverse,
    weighted_mean_matrix,
)
from .duality import (
    AssociateRow,
    BasisVector,
    Reconstruction,
    TailSumMatrix,
    alpha_dual_matrix,
    associate_row,
    basis_vector,
    dual_membership,
    gamma_dual_matrix,
    reconstruct,
    tail_sum_matrix,
)
from .limits import LimitEstimate, Verdict, analyze_tail
from .conditions import (
    CONDITION_IDS,
    CONDITION_SUMMARY,
    ClassReport,
    REQUIRED_CONDITIONS,
    TailSumFamily,
    classify_map,
    condition_verdict,
    eval_condition,
    tail_sum_family,
    transformed_rows,
)
from .compactness import (
    AssociateMatrix,
    ChiEstimate,
    associate_matrix,
    chi_norm,
    compactness_verdict,
    linf_source_autocompact_check,
    operator_norm,
    supplied_associate,
)

__version__ = "0.1.0"
