"""Fingerprinting holomorphic automorphisms of C^n at desk scale.

The library represents tame polynomial automorphisms (words of affine
maps and elementary shears), computes their 1-jet at the origin and the
Levi matrices of the plurisubharmonic potential log||F|| of the
jet-normalized map, and compares automorphisms through these sampled
fingerprints.  A small DSL, a CLI with JSON reports and a built-in
verification suite sit on top.
"""

from ._backend import backend_name
from .algebra import (
    Affine,
    AutomorphismWord,
    ComplexPolynomial,
    DimensionMismatchError,
    Generator,
    Jet1,
    SelfReferentialShearError,
    Shear,
    SingularMatrixError,
    compose,
    evaluate,
    evaluate_many,
    invert,
    jacobian,
    jacobian_many,
    jet1,
    theta_normalize,
)
from .fingerprint import (
    AffinenessReport,
    ComparisonVerdict,
    Fingerprint,
    Witness,
    affineness_report,
    compare,
    fingerprint,
    identity_levi,
    identity_levi_many,
    is_affine,
    sample_points,
)
from .lang import (
    ParseError,
    SourceSpan,
    parse_automorphism,
    parse_point,
    polynomial_text,
    serialize,
)
from .wirtinger import (
    EvaluationAtZeroError,
    LeviSample,
    NonFiniteSampleError,
    is_hermitian,
    is_pluriharmonic_at,
    is_psd,
    kernel_residual,
    levi_log_norm,
    levi_log_norm_many,
    log_norm_sampler,
    wirtinger_levi_fd,
)

__version__ = "0.1.0"

__all__ = [
    "Affine",
    "AffinenessReport",
    "AutomorphismWord",
    "ComparisonVerdict",
    "ComplexPolynomial",
    "DimensionMismatchError",
    "EvaluationAtZeroError",
    "Fingerprint",
    "Generator",
    "Jet1",
    "LeviSample",
    "NonFiniteSampleError",
    "ParseError",
    "SelfReferentialShearError",
    "Shear",
    "SingularMatrixError",
    "SourceSpan",
    "Witness",
    "affineness_report",
    "backend_name",
    "compare",
    "compose",
    "evaluate",
    "evaluate_many",
    "fingerprint",
    "identity_levi",
    "identity_levi_many",
    "invert",
    "is_affine",
    "is_hermitian",
    "is_pluriharmonic_at",
    "is_psd",
    "jacobian",
    "jacobian_many",
    "jet1",
    "kernel_residual",
    "levi_log_norm",
    "levi_log_norm_many",
    "log_norm_sampler",
    "parse_automorphism",
    "parse_point",
    "polynomial_text",
    "sample_points",
    "serialize",
    "theta_normalize",
    "wirtinger_levi_fd",
    "__version__",
]
