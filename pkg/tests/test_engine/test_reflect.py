"""Tests for the reflection into n-preorders."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncat_engine.ncat import NFunctor, identity_functor
from ncat_engine.reflect import (
    check_unit_universal,
    class_of,
    induced,
    is_npreorder,
    npreorder_witness,
    reflect,
)
from ncat_engine.search import are_isomorphic
from ncat_engine.shapes import chain, globe, parallel_cells
from ncat_engine.validator import check_functor, check_ncat
from testkit.generators import random_ncat
from testkit.library import cyclic_two, idempotent, parallel_pair


def collapse_pair() -> NFunctor:
    """The parallel pair sent onto the walking arrow."""
    pp, arrow = parallel_pair(), chain(1)
    top = {"0:0[]": "0:0[]", "1:1[]": "1:1[]", "theta1": "0:1[*]", "theta2": "0:1[*]"}
    return NFunctor(dom=pp, cod=arrow, maps=({"0": "0", "1": "1"}, top))


class TestIsNPreorder:
    def test_posets_are_npreorders(self):
        assert is_npreorder(chain(3))
        assert is_npreorder(globe(2))

    def test_parallel_cells_are_not(self):
        assert not is_npreorder(parallel_pair())
        assert npreorder_witness(parallel_pair()) == ("theta1", "theta2")

    def test_monoid_witness_names_the_unit_first(self):
        assert npreorder_witness(idempotent()) == ("1", "e")

    def test_class_of_is_the_least_parallel_cell(self):
        pp = parallel_pair()
        assert class_of(pp, "theta2") == "theta1"
        assert class_of(pp, "0:0[]") == "0:0[]"


class TestReflect:
    def test_parallel_pair_collapses_to_an_arrow(self):
        result = reflect(parallel_pair())
        assert check_ncat(result.image) is None
        assert are_isomorphic(result.image, chain(1))
        assert result.unit(1, "theta2") == "theta1"
        assert result.unit(0, "1") == "1"

    @pytest.mark.parametrize("monoid", [idempotent, cyclic_two])
    def test_monoids_collapse_to_the_point(self, monoid):
        result = reflect(monoid())
        assert result.image.cells_count() == (1, 1)
        assert check_functor(result.unit) is None

    def test_two_cells_collapse_above_a_kept_skeleton(self):
        source = parallel_cells(2, 2)
        result = reflect(source)
        assert result.image.cells[:2] == source.cells[:2]
        assert are_isomorphic(result.image, globe(2))

    def test_npreorder_is_fixed(self):
        three = chain(3)
        result = reflect(three)
        assert result.image.fingerprint == three.fingerprint
        assert all(result.unit(1, cell) == cell for cell in three.cells[1])

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000), n=st.integers(min_value=1, max_value=2))
    def test_random_reflections_are_valid_npreorders(self, seed, n):
        category = random_ncat(random.Random(seed), n, 3)
        result = reflect(category)
        assert check_ncat(result.image) is None
        assert check_functor(result.unit) is None
        assert is_npreorder(result.image)


class TestInduced:
    def test_identity_induces_identity(self):
        pp = parallel_pair()
        image = induced(identity_functor(pp))
        assert image.maps == identity_functor(reflect(pp).image).maps

    def test_collapse_induces_an_isomorphism(self):
        image = induced(collapse_pair())
        assert check_functor(image) is None
        assert image(1, "theta1") == "0:1[*]"


class TestUniversalProperty:
    @pytest.mark.parametrize(
        "make_source,make_target",
        [
            (parallel_pair, lambda: chain(1)),
            (idempotent, lambda: chain(1)),
            (lambda: parallel_cells(2, 2), lambda: globe(2)),
        ],
    )
    def test_unit_is_universal(self, make_source, make_target):
        assert check_unit_universal(make_source(), make_target())

    def test_target_must_be_an_npreorder(self):
        with pytest.raises(ValueError):
            check_unit_universal(chain(1), idempotent())
