"""Exact decision procedures for Birkhoff-James orthogonality in polyhedral
and Euclidean spaces, operator norm attainment and the Bhatia-Semrl property.
"""

from .bs_property import (
    BSVerdict,
    CorollaryResult,
    CounterexampleSpec,
    bs_check_2d,
    bs_status,
    build_counterexample,
    check_bs_instance,
    construct_counterexample,
    corollary_midpoint_predicate,
    corollary_pn_bs,
    find_nonorthogonal_direction,
    witness_exists,
)
from .errors import BJError, ConditionViolation, CounterexampleError, InputError, UnsupportedInstance
from .geometry import (
    HPolytope,
    LPOutcome,
    dual_description,
    lp_solve,
    strict_cone_feasible,
    vertex_enumeration,
)
from .operators import (
    MTComplex,
    Operator,
    image_classes,
    mt_projective_components,
    norm_attainment_set,
    op_bj_oracle,
    op_is_bj_orthogonal,
    op_norm,
    operator_space,
)
from .orthogonality import (
    CoverageCertificate,
    NormalCone2D,
    OrthoSet,
    PnCertificate,
    bj_oracle,
    covers,
    has_property_pn,
    in_minus_set,
    in_plus_set,
    is_bj_orthogonal,
    min_covering_number,
    normal_cone_2d,
    ortho_set,
)
from .space import NormingFace, Space, build_named, direct_sum, norm, norming_face, validate

__all__ = [
    "BJError",
    "BSVerdict",
    "ConditionViolation",
    "CorollaryResult",
    "CounterexampleError",
    "CounterexampleSpec",
    "CoverageCertificate",
    "HPolytope",
    "InputError",
    "LPOutcome",
    "MTComplex",
    "NormalCone2D",
    "NormingFace",
    "Operator",
    "OrthoSet",
    "PnCertificate",
    "Space",
    "UnsupportedInstance",
    "bj_oracle",
    "bs_check_2d",
    "bs_status",
    "build_counterexample",
    "build_named",
    "check_bs_instance",
    "construct_counterexample",
    "corollary_midpoint_predicate",
    "corollary_pn_bs",
    "covers",
    "direct_sum",
    "dual_description",
    "find_nonorthogonal_direction",
    "has_property_pn",
    "image_classes",
    "in_minus_set",
    "in_plus_set",
    "is_bj_orthogonal",
    "lp_solve",
    "min_covering_number",
    "mt_projective_components",
    "norm",
    "norm_attainment_set",
    "normal_cone_2d",
    "norming_face",
    "op_bj_oracle",
    "op_is_bj_orthogonal",
    "op_norm",
    "operator_space",
    "ortho_set",
    "strict_cone_feasible",
    "validate",
    "vertex_enumeration",
    "witness_exists",
]

__version__ = "0.1.0"
