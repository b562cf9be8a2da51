"""Localizations of finite categories: builders, comparison criteria and a small task DSL."""

from .adjunction import Adjunction, EMCategory, Monad, eilenberg_moore
from .category import FiniteCategory, Functor, NatTransform, check_category
from .comparison import adjoint_localization, commutation_criterion, compare
from .config import EngineConfig
from .duality import build_cellularization, co_compare, duality_suite
from .errors import EngineError, TheoremViolation
from .induced import forgetful_commutation, induce_localization, module_readings
from .localization import Localization, build_localization
from .runner import TaskRunner

__all__ = [
    "Adjunction",
    "EMCategory",
    "EngineConfig",
    "EngineError",
    "FiniteCategory",
    "Functor",
    "Localization",
    "Monad",
    "NatTransform",
    "TaskRunner",
    "TheoremViolation",
    "adjoint_localization",
    "build_cellularization",
    "build_localization",
    "check_category",
    "co_compare",
    "commutation_criterion",
    "compare",
    "duality_suite",
    "eilenberg_moore",
    "forgetful_commutation",
    "induce_localization",
    "module_readings",
]
