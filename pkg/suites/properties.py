"""Trial functions of the randomized property suites.

Every trial takes ``(n, size, seed)``, builds its instances from a
``random.Random(seed)`` with the testkit generators and returns an ``Outcome``.
Trials are module-level functions so that they can be shipped to worker processes.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Callable

from enriched.iteration import iterate_reflect
from ncat_engine.descent import (
    ReflectionProperty,
    SemiLeftExactInstance,
    SimpleInstance,
    StableUnitsInstance,
    build_edm,
    closure_relation,
    is_edm_sufficient,
    preorder_closure_oracle,
    verify_reflection_property,
)
from ncat_engine.factor import (
    Factorization,
    FactorizationSystem,
    classify,
    fill_diagonal,
    ml_factorize,
    nonstable_example,
    pullback_along,
    reflective_factorize,
    stability_witness,
    trivial_covering_squares_hold,
)
from ncat_engine.ncat import NFunctor, compose
from ncat_engine.reflect import check_unit_universal, is_npreorder, reflect
from ncat_engine.search import are_isomorphic, count_functors
from ncat_engine.validator import check_functor, check_ncat
from suites.runner import Outcome
from testkit.generators import (
    random_mutation,
    random_ncat,
    random_npreorder,
    random_skeleton,
    sample_functor,
)
from testkit.library import parallel_pairs

logger = logging.getLogger(__name__)

SuiteTrial = Callable[[int, int, int], Outcome]

MUTANTS_PER_TRIAL = 4
UNIVERSAL_FUNCTOR_LIMIT = 10**4
ORACLE_MAX_PAIRS = 5

FACTORIZERS: dict[FactorizationSystem, Callable[[NFunctor], Factorization]] = {
    FactorizationSystem.REFLECTIVE: reflective_factorize,
    FactorizationSystem.MONOTONE_LIGHT: ml_factorize,
}


def axioms_trial(n: int, size: int, seed: int) -> Outcome:
    """A generated n-category validates and every sampled mutation is rejected."""
    rng = random.Random(seed)
    category = random_ncat(rng, n, size)
    violation = check_ncat(category)
    if violation is not None:
        return Outcome(False, f"generated n-category rejected: {violation}")
    for _ in range(MUTANTS_PER_TRIAL):
        mutation = random_mutation(rng, category)
        if check_ncat(mutation.category) is None:
            return Outcome(
                False,
                f"mutation of {mutation.table}{list(mutation.level)}[{mutation.key}] "
                f"from {mutation.old} to {mutation.new} was accepted",
            )
    return Outcome(True)


def reflection_trial(n: int, size: int, seed: int) -> Outcome:
    """The reflection is an n-preorder, η is the identity below n and η is universal."""
    rng = random.Random(seed)
    category = random_ncat(rng, n, size)
    result = reflect(category)
    if not is_npreorder(result.image):
        return Outcome(False, "reflection is not an n-preorder")
    if check_functor(result.unit) is not None:
        return Outcome(False, f"unit is not a functor: {check_functor(result.unit)}")
    for level in range(n):
        if any(result.unit.maps[level][cell] != cell for cell in category.cells[level]):
            return Outcome(False, f"unit moves a cell on level {level}")
    target = random_npreorder(rng, n, size)
    total = count_functors(category, target, limit=UNIVERSAL_FUNCTOR_LIMIT + 1)
    if total > UNIVERSAL_FUNCTOR_LIMIT:
        return Outcome(True, "universal property skipped: functor space too large")
    if not check_unit_universal(category, target):
        return Outcome(False, "a functor into an n-preorder does not factor uniquely through η")
    return Outcome(True, f"universal property checked over {total} functors")


def stable_units_trial(n: int, size: int, seed: int) -> Outcome:
    """Stable units, semi-left-exactness and simplicity on a random cospan."""
    rng = random.Random(seed)
    vertex = random_npreorder(rng, n, size)
    a = random_ncat(rng, n, size)
    b = random_ncat(rng, n, size)
    f = sample_functor(rng, a, vertex)
    g = sample_functor(rng, b, vertex)
    if not verify_reflection_property(ReflectionProperty.STABLE_UNITS, StableUnitsInstance(f, g)):
        return Outcome(False, "I(A ×_X B) is not isomorphic to I(A) ×_X I(B)")
    s = random_npreorder(rng, n, size)
    phi = sample_functor(rng, s, reflect(a).image)
    instance = SemiLeftExactInstance(a, s, phi)
    if not verify_reflection_property(ReflectionProperty.SEMI_LEFT_EXACT, instance):
        return Outcome(False, "pulled back unit is not inverted by the reflection")
    if not verify_reflection_property(ReflectionProperty.SIMPLE, SimpleInstance(f)):
        return Outcome(False, "reflection of the vertical part is not invertible")
    return Outcome(True)


def check_factorization(f: NFunctor, factorization: Factorization) -> str | None:
    """Describe the first defect of a factorization of ``f``, or None if it is sound.

    The middle object must be an n-category and both sides must be n-functors
    before recomposition and class membership are looked at.
    """
    system = factorization.system
    violation = check_ncat(factorization.middle)
    if violation is not None:
        return f"{system.name}: middle object is not an n-category: {violation}"
    for side, functor in (("e", factorization.e), ("m", factorization.m)):
        violation = check_functor(functor)
        if violation is not None:
            return f"{system.name}: {side} is not an n-functor: {violation}"
    if compose(factorization.m, factorization.e).maps != f.maps:
        return f"{system.name}: m ∘ e differs from f"
    if not classify(factorization.e).in_left_class(system):
        return f"{system.name}: e is not in the left class"
    if not classify(factorization.m).in_right_class(system):
        return f"{system.name}: m is not in the right class"
    return None


def factorization_trial(n: int, size: int, seed: int) -> Outcome:
    """Both factorizations recompose to f with sides in the right classes."""
    rng = random.Random(seed)
    f = sample_functor(rng, random_ncat(rng, n, size), random_ncat(rng, n, size))
    for factorize in FACTORIZERS.values():
        factorization = factorize(f)
        failure = check_factorization(f, factorization)
        if failure is not None:
            return Outcome(False, failure)
        if factorization.system == FactorizationSystem.REFLECTIVE:
            if not trivial_covering_squares_hold(factorization.m):
                return Outcome(False, "a naturality square of a trivial covering is not a pullback")
    if classify(f).trivial_covering and not trivial_covering_squares_hold(f):
        return Outcome(False, "a naturality square of f is not a pullback")
    return Outcome(True)


def orthogonality_trial(n: int, size: int, seed: int) -> Outcome:
    """The square ``(e_f, m_g, e_g, k ∘ m_f)`` for ``g = k ∘ f`` has exactly one diagonal."""
    rng = random.Random(seed)
    a, b, c = (random_ncat(rng, n, size) for _ in range(3))
    f = sample_functor(rng, a, b)
    k = sample_functor(rng, b, c)
    g = compose(k, f)
    for system, factorize in FACTORIZERS.items():
        of_f, of_g = factorize(f), factorize(g)
        failure = check_factorization(f, of_f) or check_factorization(g, of_g)
        if failure is not None:
            return Outcome(False, failure)
        fill =fill_diagonal(of_f.e, of_g.m, of_g.e, compose(k, of_f.m), system=system, limit=2)
        if fill.unique is None:
            return Outcome(False, f"{system.name}: {len(fill.diagonals)} diagonals found")
    return Outcome(True)


def nontriviality_trial(n: int, size: int, seed: int) -> Outcome:
    """The stability gadget breaks verticality; stably vertical maps survive pullback."""
    f, witness = nonstable_example()
    verdict = classify(f)
    if not verdict.vertical or verdict.stably_vertical:
        return Outcome(False, f"gadget classified as {verdict.flags()}")
    if classify(witness.pulled_back).vertical:
        return Outcome(False, "pulling the gadget back kept it vertical")

    rng = random.Random(seed)
    f = sample_functor(rng, random_ncat(rng, n, size), random_ncat(rng, n, size))
    vertical_part = ml_factorize(f).e
    g = sample_functor(rng, random_ncat(rng, n, size), vertical_part.cod)
    if not classify(pullback_along(g, vertical_part)).vertical:
        return Outcome(False, "a pullback of a stably vertical map is not vertical")
    random_witness = stability_witness(reflective_factorize(f).e)
    if random_witness is not None and classify(random_witness.pulled_back).vertical:
        return Outcome(False, f"witness {random_witness.theta} does not break verticality")
    return Outcome(True)


def descent_trial(n: int, size: int, seed: int) -> Outcome:
    """build_edm gives a sufficient cover by an n-preorder; the closure matches the oracle."""
    rng = random.Random(seed)
    category = random_ncat(rng, n, size)
    cover = build_edm(category)
    if not is_npreorder(cover.total):
        return Outcome(False, "cover is not an n-preorder")
    violation = check_functor(cover.projection)
    if violation is not None:
        return Outcome(False, f"projection is not a functor: {violation}")
    verdict = is_edm_sufficient(cover.projection)
    if not verdict:
        return Outcome(False, f"configuration {verdict.missing} does not lift")
    if n < 2:
        return Outcome(True)

    skeleton = random_skeleton(rng, n, size)
    generators = [pair for pair in parallel_pairs(skeleton) if rng.random() < 0.3]
    try:
        oracle = preorder_closure_oracle(skeleton, generators, ORACLE_MAX_PAIRS)
    except ValueError:
        return Outcome(True, "oracle skipped: too many parallel pairs")
    if frozenset(closure_relation(skeleton, generators)) != oracle:
        return Outcome(False, "preorder closure differs from the intersection of closed relations")
    return Outcome(True)


def crosscheck_trial(n: int, size: int, seed: int) -> Outcome:
    """The reflection iterated through enriched homs agrees with the direct one."""
    rng = random.Random(seed)
    category = random_ncat(rng, n, size)
    unit = iterate_reflect(category)
    violation = check_functor(unit)
    if violation is not None:
        return Outcome(False, f"iterated unit is not a functor: {violation}")
    if not are_isomorphic(unit.cod, reflect(category).image):
        return Outcome(False, "iterated and direct reflections are not isomorphic")
    return Outcome(True)


SUITES: dict[str, SuiteTrial] = {
    "axioms": axioms_trial,
    "reflection": reflection_trial,
    "stable-units": stable_units_trial,
    "factorization": factorization_trial,
    "orthogonality": orthogonality_trial,
    "nontriviality": nontriviality_trial,
    "descent": descent_trial,
    "crosscheck": crosscheck_trial,
}
