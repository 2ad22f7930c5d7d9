"""Clamped-plate disk spectrum, eigenfunction envelopes and nodal-void certificates."""
from .config import Accuracy, DEFAULT_ACCURACY
from .errors import (
    BracketFailure,
    CertificationFailed,
    DivergentEnvelope,
    DomainError,
    KnTooLarge,
    NodalVoidError,
    NonConvergence,
    NondegeneracyRequired,
    Overflow,
    PoleProximity,
    QuadratureUnconverged,
    RampViolation,
)

__version__ = "0.1.0"

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "BracketFailure",
    "CertificationFailed",
    "DivergentEnvelope",
    "DomainError",
    "KnTooLarge",
    "NodalVoidError",
    "NonConvergence",
    "NondegeneracyRequired",
    "Overflow",
    "PoleProximity",
    "QuadratureUnconverged",
    "RampViolation",
]
