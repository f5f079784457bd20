"""Tests for the seeded generators."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncat_engine.ncat import make_ncat
from ncat_engine.reflect import is_npreorder
from ncat_engine.shapes import chain, linear
from ncat_engine.validator import check_functor, check_ncat
from testkit.generators import (
    constant_functor,
    fits,
    generator_count,
    random_linear,
    random_mutation,
    random_ncat,
    random_npreorder,
    random_poset,
    random_skeleton,
    sample_functor,
)
from testkit.library import idempotent, parallel_pair

seeds = st.integers(min_value=0, max_value=10_000)
dimensions = st.integers(min_value=1, max_value=2)


def empty_category():
    return make_ncat(1, [[], []], [{}, {}], [{}, {}], [{}, {}], {})


class TestRandomCategories:
    def test_generator_count(self):
        assert generator_count(chain(2)) == 3
        assert generator_count(idempotent()) == 1

    def test_same_seed_same_category(self):
        first = random_ncat(random.Random(11), 2, 3)
        second = random_ncat(random.Random(11), 2, 3)
        assert first.fingerprint == second.fingerprint

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, n=dimensions)
    def test_generated_categories_are_valid(self, seed, n):
        category = random_ncat(random.Random(seed), n, 3)
        assert category.n == n
        assert check_ncat(category) is None
        assert fits(category, 3) or generator_count(category) <= 1

    @settings(max_examples=20, deadline=None)
    @given(seed=seeds)
    def test_random_posets_are_npreorders(self, seed):
        category = random_poset(random.Random(seed), 4)
        assert check_ncat(category) is None
        assert is_npreorder(category)

    @settings(max_examples=20, deadline=None)
    @given(seed=seeds, n=dimensions)
    def test_random_npreorders(self, seed, n):
        assert is_npreorder(random_npreorder(random.Random(seed), n, 2))

    @pytest.mark.parametrize("n", [1, 2])
    def test_linear_shapes_and_skeletons(self, n):
        rng = random.Random(5)
        assert check_ncat(random_linear(rng, n, 2)) is None
        assert random_skeleton(random.Random(5), n + 1, 2).n == n

    def test_random_ncat_draws_linear_shapes(self):
        class AlwaysLinear(random.Random):
            def choice(self, seq):
                return "linear" if "linear" in seq else super().choice(seq)

        category = random_ncat(AlwaysLinear(2), 1, 3)
        assert category in [linear(r) for r in range(3)]


class TestMutations:
    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=dimensions)
    def test_mutations_are_rejected(self, seed, n):
        rng = random.Random(seed)
        category = random_ncat(rng, n, 2)
        mutation = random_mutation(rng, category)
        assert mutation.old != mutation.new
        assert check_ncat(mutation.category) is not None

    def test_mutation_records_the_change(self):
        mutation = random_mutation(random.Random(3), parallel_pair())
        assert mutation.table in {"src", "tgt", "idn", "comp"}
        assert mutation.category != parallel_pair()


class TestFunctors:
    def test_constant_functor(self):
        f = constant_functor(parallel_pair(), chain(2), "1")
        assert check_functor(f) is None
        assert f(1, "theta1") == "1:1[]"

    @settings(max_examples=20, deadline=None)
    @given(seed=seeds)
    def test_sampled_functors_are_valid(self, seed):
        rng = random.Random(seed)
        f = sample_functor(rng, random_ncat(rng, 1, 3), random_ncat(rng, 1, 3))
        assert check_functor(f) is None

    def test_no_functor_into_an_empty_category(self):
        with pytest.raises(ValueError):
            sample_functor(random.Random(0), chain(1), empty_category())
