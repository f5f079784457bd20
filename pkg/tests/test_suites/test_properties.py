"""A few trials of every registered suite."""

import random
from dataclasses import replace

import pytest

from ncat_engine.factor import ml_factorize, reflective_factorize
from ncat_engine.ncat import NFunctor, identity_functor
from ncat_engine.shapes import chain, parallel_cells
from suites.properties import SUITES, check_factorization
from testkit.generators import random_mutation


@pytest.mark.parametrize("seed", [0, 1])
@pytest.mark.parametrize("n", [1, 2])
@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_trial_passes(suite, n, seed):
    outcome = SUITES[suite](n, 2, seed)
    assert outcome.passed, outcome.detail


class TestRegistry:
    def test_suite_names(self):
        assert set(SUITES) == {
            "axioms",
            "reflection",
            "stable-units",
            "factorization",
            "orthogonality",
            "nontriviality",
            "descent",
            "crosscheck",
        }


class TestCheckFactorization:
    @pytest.mark.parametrize("make", [lambda: chain(1), lambda: parallel_cells(2, 1)])
    def test_sound_factorizations(self, make):
        f = identity_functor(make())
        assert check_factorization(f, reflective_factorize(f)) is None
        assert check_factorization(f, ml_factorize(f)) is None

    def test_invalid_middle_is_reported(self):
        f = identity_functor(chain(1))
        factorization = reflective_factorize(f)
        broken = random_mutation(random.Random(0), factorization.middle).category
        failure = check_factorization(f, replace(factorization, middle=broken))
        assert failure is not None
        assert failure.startswith("REFLECTIVE: middle object is not an n-category")

    def test_invalid_side_is_reported(self):
        f = identity_functor(chain(1))
        factorization = ml_factorize(f)
        top = dict(factorization.e.maps[1])
        top["0:1[*]"] = "0:0[]@0=>0"
        e = NFunctor(
            dom=factorization.e.dom,
            cod=factorization.e.cod,
            maps=(factorization.e.maps[0], top),
        )
        failure = check_factorization(f, replace(factorization, e=e))
        assert failure is not None
        assert failure.startswith("MONOTONE_LIGHT: e is not an n-functor")
