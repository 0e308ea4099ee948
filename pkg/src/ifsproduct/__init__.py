"""Exact tools for the product set ``K*K`` of a three-map self-similar set ``K``."""

from .decompose import DecompositionCertificate, decompose, verify_certificate
from .errors import (
    HypothesisFailure,
    IfsProductError,
    InvalidParams,
    NotInPurpleRegion,
    Undecided,
)
from .ifs import IfsParams, build_cover, endpoint_samples, validate_params, word_interval
from .numerics import Interval, IntervalUnion, as_rational, format_rational
from .products import product_union, refine_product, stability_check
from .regions import RegionLabel, classify, verify_theorem

__all__ = [
    "DecompositionCertificate",
    "HypothesisFailure",
    "IfsParams",
    "IfsProductError",
    "Interval",
    "IntervalUnion",
    "InvalidParams",
    "NotInPurpleRegion",
    "RegionLabel",
    "Undecided",
    "as_rational",
    "build_cover",
    "classify",
    "decompose",
    "endpoint_samples",
    "format_rational",
    "product_union",
    "refine_product",
    "stability_check",
    "validate_params",
    "verify_certificate",
    "verify_theorem",
    "word_interval",
]
