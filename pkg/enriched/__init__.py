"""Enriched categories over a cartesian base and the iterated reflection."""

from enriched.base import Base, BaseCone
from enriched.conditions import BaseConditionsReport, ConditionCheck, check_base_conditions
from enriched.iteration import from_enriched, iterate_reflect, to_enriched
from enriched.ncat_base import BaseMismatchError, NCatBase
from enriched.vcat import (
    VCat,
    VCatValidationError,
    VFunctor,
    VPullback,
    VViolation,
    derive_functor,
    derive_reflect,
    stable_units_enriched,
    unit_vcat,
    vcat_product,
    vcat_pullback,
    vcat_validate,
)

__all__ = [
    "Base",
    "BaseCone",
    "BaseConditionsReport",
    "BaseMismatchError",
    "ConditionCheck",
    "NCatBase",
    "VCat",
    "VCatValidationError",
    "VFunctor",
    "VPullback",
    "VViolation",
    "check_base_conditions",
    "derive_functor",
    "derive_reflect",
    "from_enriched",
    "iterate_reflect",
    "stable_units_enriched",
    "to_enriched",
    "unit_vcat",
    "vcat_product",
    "vcat_pullback",
    "vcat_validate",
]
