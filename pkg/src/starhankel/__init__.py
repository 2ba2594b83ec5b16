"""Verification toolkit for coefficient functionals of the class S_u*."""

from .functionals import BOUNDS, FUNCTIONAL_IDS, FunctionalValue, evaluate_all
from .genclass import (
    CaratheodoryPrefix,
    CoeffPrefix,
    DomainError,
    HerglotzMeasure,
    SchurPoint,
    extremal,
    function_from_p,
    function_from_schur,
    herglotz_series,
    membership_check,
)
from .series import NormalizedSeries, TruncatedSeries

__version__ = "0.1.0"

__all__ = [
    "BOUNDS",
    "FUNCTIONAL_IDS",
    "CaratheodoryPrefix",
    "CoeffPrefix",
    "DomainError",
    "FunctionalValue",
    "HerglotzMeasure",
    "NormalizedSeries",
    "SchurPoint",
    "TruncatedSeries",
    "evaluate_all",
    "extremal",
    "function_from_p",
    "function_from_schur",
    "herglotz_series",
    "membership_check",
    "__version__",
]
