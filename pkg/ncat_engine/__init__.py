"""Finite strict n-categories, their reflection into n-preorders and its factorizations."""

from ncat_engine.descent import build_edm, is_edm_sufficient, preorder_closure
from ncat_engine.factor import (
    FactorizationSystem,
    MorphismClass,
    classify,
    fill_diagonal,
    ml_factorize,
    reflective_factorize,
)
from ncat_engine.limits import coproduct, product, pullback, terminal
from ncat_engine.ncat import NCat, NFunctor, compose, identity_functor, make_ncat
from ncat_engine.reflect import ReflectionResult, is_npreorder, reflect
from ncat_engine.search import are_isomorphic, find_isomorphism, iter_functors
from ncat_engine.validator import (
    NCatValidationError,
    Violation,
    is_functor_valid,
    validate_ncat,
)

__all__ = [
    # core
    "NCat",
    "NFunctor",
    "compose",
    "identity_functor",
    "make_ncat",
    "NCatValidationError",
    "Violation",
    "is_functor_valid",
    "validate_ncat",
    # limits and search
    "coproduct",
    "product",
    "pullback",
    "terminal",
    "are_isomorphic",
    "find_isomorphism",
    "iter_functors",
    # reflection
    "ReflectionResult",
    "is_npreorder",
    "reflect",
    # factorization
    "FactorizationSystem",
    "MorphismClass",
    "classify",
    "fill_diagonal",
    "ml_factorize",
    "reflective_factorize",
    # descent
    "build_edm",
    "is_edm_sufficient",
    "preorder_closure",
]
