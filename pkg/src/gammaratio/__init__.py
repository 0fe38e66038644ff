"""Gamma-function ratio inequality: evaluators, kernels, bounds and verification sweeps."""

from .kernels import INV_SQRT2, DomainPoint
from .ratio import BoundVerdict, ExpectedOrder, envelope, normalized_ratio, theorem1_sides
from .specfun import (
    DEFAULT_POLICY,
    EXTENDED,
    NATIVE,
    DomainError,
    EvalPolicy,
    ExtendedArithmetic,
    NativeArithmetic,
    digamma,
    log_gamma,
    tetragamma,
    trigamma,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_POLICY",
    "EXTENDED",
    "INV_SQRT2",
    "NATIVE",
    "BoundVerdict",
    "DomainError",
    "DomainPoint",
    "EvalPolicy",
    "ExpectedOrder",
    "ExtendedArithmetic",
    "NativeArithmetic",
    "digamma",
    "envelope",
    "log_gamma",
    "normalized_ratio",
    "tetragamma",
    "theorem1_sides",
    "trigamma",
]
