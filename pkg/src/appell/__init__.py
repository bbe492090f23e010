"""Appell F1-F4, Horn, Kampe de Feriet and Lauricella series with executable identity checks."""

from .core import DEFAULT_OPTIONS, EvaluationOptions, EvaluationResult, gauss_2f1, hyp2f1, pochhammer
from .errors import (AppellError, BranchError, BudgetExceeded, ConstraintError, DimensionError,
                     DomainError, ParameterError, PoleError, QuadratureFailure, SingularPoint,
                     UnsupportedShift)
from .extended import (HornParams, KdFSpec, LauricellaParams, eval_horn, eval_kdf, eval_lauricella,
                       kdf_summation)
from .integrals import QuadratureSpec, appell_double_integral, elliptic, f1_single_integral
from .recursions import ShiftSpec, multiterm_recursion_eval, recursion_eval
from .series import F1, F2, F3, F4, AppellParams, Point2, appell, classify_domain, eval_appell
from .transforms import ReductionId, TransformId, eval_auto, reduce, transform

__version__ = "0.1.0"

__all__ = [
    "AppellError", "AppellParams", "BranchError", "BudgetExceeded", "ConstraintError",
    "DEFAULT_OPTIONS", "DimensionError", "DomainError", "EvaluationOptions", "EvaluationResult",
    "F1", "F2", "F3", "F4", "HornParams", "KdFSpec", "LauricellaParams", "ParameterError",
    "Point2", "PoleError", "QuadratureFailure", "QuadratureSpec", "ReductionId", "ShiftSpec",
    "SingularPoint", "TransformId", "UnsupportedShift", "appell", "appell_double_integral",
    "classify_domain", "elliptic", "eval_appell", "eval_auto", "eval_horn", "eval_kdf",
    "eval_lauricella", "f1_single_integral", "gauss_2f1", "hyp2f1", "kdf_summation",
    "multiterm_recursion_eval", "pochhammer", "recursion_eval", "reduce", "transform",
]
