"""Free universal algebras, the Hartman-Mycielski step-function functor,
and finite checks of the embedding argument built from them."""

from .embedding import (
    Retraction,
    build_retraction_metric,
    build_retraction_uniform,
    lemma1_injectivity,
    theorem2_pipeline,
    verify_retract,
)
from .hm import (
    HMAlgebra,
    SampledHMValued,
    build_h,
    check_h_identity,
    check_hm_preserves_identities,
    check_naturality_square,
    hm_embed,
    lift_op,
)
from .quotient import (
    FuelExhausted,
    RewriteRule,
    RewriteSystem,
    normalize,
    parse_rule,
    quotient_equal,
    satisfies_identity,
)
from .signature import (
    Algebra,
    CarrierMap,
    Signature,
    is_homomorphism,
    is_subalgebra,
    product_algebra,
    validate_signature,
)
from .stepfn import (
    StepFn,
    in_neighborhood,
    measure_where,
    pointwise_map,
    stepfn_new,
    value_at,
    zip_many,
)
from .terms import (
    FreeAlgebra,
    Gen,
    Op,
    Var,
    enumerate_terms,
    free_extension,
    generator,
    induced_map,
    parse_term,
    term_build,
)
from .topology import FiniteSpace, ContinuousMap, is_closed, is_closed_embedding, validate_space

__version__ = "0.1.0"

__all__ = [
    "Retraction",
    "build_retraction_metric",
    "build_retraction_uniform",
    "lemma1_injectivity",
    "theorem2_pipeline",
    "verify_retract",
    "HMAlgebra",
    "SampledHMValued",
    "build_h",
    "check_h_identity",
    "check_hm_preserves_identities",
    "check_naturality_square",
    "hm_embed",
    "lift_op",
    "FuelExhausted",
    "RewriteRule",
    "RewriteSystem",
    "normalize",
    "parse_rule",
    "quotient_equal",
    "satisfies_identity",
    "Algebra",
    "CarrierMap",
    "Signature",
    "is_homomorphism",
    "is_subalgebra",
    "product_algebra",
    "validate_signature",
    "StepFn",
    "in_neighborhood",
    "measure_where",
    "pointwise_map",
    "stepfn_new",
    "value_at",
    "zip_many",
    "FreeAlgebra",
    "Gen",
    "Op",
    "Var",
    "enumerate_terms",
    "free_extension",
    "generator",
    "induced_map",
    "parse_term",
    "term_build",
    "FiniteSpace",
    "ContinuousMap",
    "is_closed",
    "is_closed_embedding",
    "validate_space",
]
