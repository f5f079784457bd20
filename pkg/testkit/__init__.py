"""Seed n-categories, seeded random generators and validator mutations."""

from testkit.generators import (
    Mutation,
    constant_functor,
    generator_count,
    random_functor,
    random_linear,
    random_mutation,
    random_ncat,
    random_npreorder,
    random_poset,
    random_skeleton,
    sample_functor,
)
from testkit.library import (
    UNIT_ELEMENT,
    cyclic_two,
    discrete,
    endo_two_cell,
    idempotent,
    monoid,
    parallel_pair,
    parallel_pairs,
    poset,
    seed_library,
    walking_arrow,
)

__all__ = [
    # library
    "UNIT_ELEMENT",
    "cyclic_two",
    "discrete",
    "endo_two_cell",
    "idempotent",
    "monoid",
    "parallel_pair",
    "parallel_pairs",
    "poset",
    "seed_library",
    "walking_arrow",
    # generators
    "Mutation",
    "constant_functor",
    "generator_count",
    "random_functor",
    "random_linear",
    "random_mutation",
    "random_ncat",
    "random_npreorder",
    "random_poset",
    "random_skeleton",
    "sample_functor",
]
