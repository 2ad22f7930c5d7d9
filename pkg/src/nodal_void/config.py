"""Accuracy settings for special-function evaluation."""
from __future__ import annotations

import os
from dataclasses import dataclass

PRECISION_ENV = "PLATE_VOID_PRECISION"
PRECISIONS = ("double", "extended")

# digits used by the mpmath backend in extended mode
EXTENDED_DPS = 34


def default_precision() -> str:
    value = os.environ.get(PRECISION_ENV, "double").strip().lower()
    if value not in PRECISIONS:
        raise ValueError(f"{PRECISION_ENV} must be one of {PRECISIONS}, got {value!r}")
    return value


@dataclass(frozen=True)
class Accuracy:
    """Error budget for one special-function evaluation.

    ``target_abs_err`` bounds the absolute error of values of moderate size
    (J_n, ratios, cross ratios).  ``target_rel_err`` bounds the relative error
    of quantities whose magnitude is unbounded (I_n), which is also the
    absolute error of their logarithms.
    """

    target_abs_err: float = 1e-10
    max_terms: int = 200_000
    target_rel_err: float = 1e-10
    precision: str = "double"

    def __post_init__(self):
        if not self.target_abs_err > 0:
            raise ValueError("target_abs_err must be positive")
        if not self.target_rel_err > 0:
            raise ValueError("target_rel_err must be positive")
        if int(self.max_terms) < 1:
            raise ValueError("max_terms must be at least 1")
        if self.precision not in PRECISIONS:
            raise ValueError(f"precision must be one of {PRECISIONS}")

    @classmethod
    def from_env(cls, **kwargs) -> "Accuracy":
        kwargs.setdefault("precision", default_precision())
        return cls(**kwargs)

    @property
    def extended(self) -> bool:
        return self.precision == "extended"


DEFAULT_ACCURACY = Accuracy()
