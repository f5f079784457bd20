"""Tests for functor enumeration and isomorphism search."""

import pytest

from ncat_engine.config import MAX_CELLS_ENV
from ncat_engine.limits import coproduct, product
from ncat_engine.search import (
    ISO_CACHE_SIZE,
    EnumerationLimitError,
    are_isomorphic,
    clear_isomorphism_cache,
    count_functors,
    ensure_within_limit,
    find_isomorphism,
    invariant_key,
    isomorphism_cache_info,
    iter_functors,
)
from ncat_engine.shapes import chain, globe, parallel_cells
from ncat_engine.validator import check_functor
from testkit.library import cyclic_two, discrete, idempotent, poset


class TestIterFunctors:
    def test_monotone_maps_of_the_walking_arrow(self):
        assert count_functors(chain(1), chain(1)) == 3

    def test_walking_arrow_into_parallel_pair(self):
        found = list(iter_functors(chain(1), parallel_cells(1, 2)))
        assert len(found) == 4
        assert all(check_functor(f) is None for f in found)

    def test_monoid_homomorphisms(self):
        # s * s = 1 and e * e = e only allow the unit as a cross image.
        assert count_functors(cyclic_two(), idempotent()) == 1
        assert count_functors(idempotent(), cyclic_two()) == 1
        assert count_functors(idempotent(), idempotent()) == 2

    def test_fixed_images_are_respected(self):
        fixed = [{"0": "1"}, {}]
        found = list(iter_functors(chain(1), chain(1), fixed=fixed))
        assert len(found) == 1
        assert found[0](0, "1") == "1"

    def test_allowed_predicate_filters(self):
        def keep_objects(level, cell, image):
            return level > 0 or cell == image

        assert count_functors(chain(2), chain(2), allowed=keep_objects) == 1

    def test_injective_search(self):
        assert count_functors(chain(1), chain(2)) == 6
        found = list(iter_functors(chain(1), chain(2), injective=True))
        assert len(found) == 3

    def test_no_functor_between_dimensions(self):
        assert count_functors(chain(1), globe(2)) == 0

    def test_count_stops_at_limit(self):
        assert count_functors(discrete(["a", "b", "c"]), chain(3), limit=5) == 5

    def test_two_functors_respect_composition(self):
        for f in iter_functors(globe(2), parallel_cells(2, 2)):
            assert check_functor(f) is None


class TestLimit:
    def test_within_limit(self):
        ensure_within_limit(chain(2), max_cells=6)

    def test_above_explicit_limit(self):
        with pytest.raises(EnumerationLimitError):
            ensure_within_limit(chain(2), max_cells=5)

    def test_environment_cap(self, monkeypatch):
        monkeypatch.setenv(MAX_CELLS_ENV, "2")
        with pytest.raises(EnumerationLimitError):
            next(iter_functors(chain(2), chain(2)))

    def test_cap_can_be_switched_off(self, monkeypatch):
        monkeypatch.setenv(MAX_CELLS_ENV, "2")
        assert len(list(iter_functors(chain(1), chain(1), enforce_limit=False))) == 3


class TestIsomorphism:
    def test_relabeled_poset_is_isomorphic(self):
        a = poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
        b = poset(["x", "y", "z"], [("y", "z"), ("z", "x")])
        witness = find_isomorphism(a, b)
        assert witness is not None
        assert witness.forward(0, "a") == "y"
        assert witness.backward(0, "x") == "c"

    def test_same_sizes_different_structure(self):
        chain_order = poset(["a", "b", "c"], [("a", "b"), ("b", "c")])
        span = poset(["a", "b", "c"], [("a", "b"), ("a", "c")])
        assert invariant_key(chain_order) != invariant_key(span)
        assert find_isomorphism(chain_order, span) is None

    def test_product_is_symmetric(self):
        left = product(chain(1), idempotent()).apex
        right = product(idempotent(), chain(1)).apex
        assert are_isomorphic(left, right)

    def test_coproduct_tags_do_not_matter(self):
        left = coproduct([chain(1), idempotent()], ["p", "q"]).apex
        right = coproduct([idempotent(), chain(1)], ["u", "v"]).apex
        assert are_isomorphic(left, right)

    def test_monoids_of_equal_size_differ(self):
        assert not are_isomorphic(cyclic_two(), idempotent())

    def test_verdicts_are_cached_in_both_directions(self):
        clear_isomorphism_cache()
        left = product(chain(1), idempotent()).apex
        right = product(idempotent(), chain(1)).apex
        assert are_isomorphic(left, right)
        assert are_isomorphic(right, left)
        hits, misses, maxsize, currsize = isomorphism_cache_info()
        assert (hits, misses, currsize) == (1, 1, 1)
        assert maxsize == ISO_CACHE_SIZE

    def test_clearing_the_cache(self):
        clear_isomorphism_cache()
        for r in range(3):
            assert not are_isomorphic(chain(r), chain(r + 1))
        assert isomorphism_cache_info()[3] == 3
        clear_isomorphism_cache()
        assert isomorphism_cache_info()[3] == 0
