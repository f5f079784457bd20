"""Tests for the n-category and n-functor models."""

import pytest

from ncat_engine.ncat import (
    CompositionError,
    NFunctor,
    compose,
    generated_subcategory,
    identity_functor,
    invert,
    is_plain_cell_name,
    is_bijective,
    make_ncat,
    truncate,
)
from ncat_engine.shapes import chain, globe, parallel_cells
from ncat_engine.validator import validate_ncat


def walking_arrow_by_hand():
    return make_ncat(
        1,
        [["a", "b"], ["1a", "1b", "f"]],
        [{}, {"1a": "a", "1b": "b", "f": "a"}],
        [{}, {"1a": "a", "1b": "b", "f": "b"}],
        [{}, {"a": "1a", "b": "1b"}],
        {(1, 0): {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f", ("1b", "f"): "f"}},
    )


class TestMakeNCat:
    def test_cells_are_sorted_and_deduplicated(self):
        category = make_ncat(
            1,
            [["b", "a", "a"], ["1b", "1a"]],
            [{}, {"1a": "a", "1b": "b"}],
            [{}, {"1a": "a", "1b": "b"}],
            [{}, {"a": "1a", "b": "1b"}],
            {(1, 0): {("1a", "1a"): "1a", ("1b", "1b"): "1b"}},
        )
        assert category.cells[0] == ("a", "b")
        assert category.cells_count() == (2, 2)

    def test_missing_composition_tables_are_empty(self):
        boundary = [{}, {"1": "x"}, {"11": "1"}]
        category = make_ncat(
            2, [["x"], ["1"], ["11"]], boundary, boundary, [{}, {"x": "1"}, {"1": "11"}], {}
        )
        assert set(category.comp) == {(1, 0), (2, 0), (2, 1)}
        assert all(table == {} for table in category.comp.values())

    def test_equal_structures_share_a_fingerprint(self):
        assert walking_arrow_by_hand().fingerprint == walking_arrow_by_hand().fingerprint
        assert hash(walking_arrow_by_hand()) == hash(walking_arrow_by_hand())


class TestAccessors:
    def test_identity_cells(self):
        category = walking_arrow_by_hand()
        assert category.is_identity(1, "1a")
        assert not category.is_identity(1, "f")

    def test_iterated_boundaries_of_globe(self):
        two = globe(2)
        top = "0:1[0:1[*]]"
        assert two.bnd_src(top, 2, 0) == "0"
        assert two.bnd_tgt(top, 2, 0) == "1"
        assert two.bnd_src(top, 2, 1) == "0:1[0]"

    def test_identity_tower(self):
        two = globe(2)
        assert two.identity_tower("0", 0, 2) == "0:0[]"
        assert two.identity_tower("0", 0, 0) == "0"

    def test_composable_and_compose_cells(self):
        category = walking_arrow_by_hand()
        assert category.composable(1, 0, "1b", "f")
        assert not category.composable(1, 0, "f", "1b")
        assert category.compose_cells(1, 0, "1b", "f") == "f"
        assert category.compose_cells(1, 0, "f", "1b") is None

    def test_homs_of_parallel_cells(self):
        pair = parallel_cells(1, 2)
        assert pair.hom("0", "1") == ("theta1", "theta2")
        assert pair.hom("1", "0") == ()
        assert ("0", "1") in pair.nonempty_homs()
        assert len(list(pair.hom_pairs())) == 4

    def test_to_dict_uses_file_keys(self):
        data = walking_arrow_by_hand().to_dict()
        assert data["n"] == 1
        assert data["comp"]["1,0"]["1b|f"] == "f"
        assert len(data["src"]) == 1


class TestFunctors:
    def test_identity_functor_is_bijective(self):
        identity = identity_functor(chain(2))
        assert is_bijective(identity)
        assert identity(1, "0:2[*;*]") == "0:2[*;*]"

    def test_compose_with_identity(self):
        category = chain(2)
        identity = identity_functor(category)
        assert compose(identity, identity).maps == identity.maps

    def test_compose_rejects_mismatched_ends(self):
        with pytest.raises(CompositionError):
            compose(identity_functor(chain(1)), identity_functor(chain(2)))

    def test_invert_round_trip(self):
        identity = identity_functor(globe(2))
        assert invert(identity).maps == identity.maps

    def test_invert_rejects_non_bijection(self):
        single, double = parallel_cells(1, 1), parallel_cells(1, 2)
        maps = tuple({c: c for c in level} for level in single.cells)
        with pytest.raises(ValueError):
            invert(NFunctor(dom=single, cod=double, maps=maps))

    def test_is_bijective_on_selected_levels(self):
        single, double = parallel_cells(1, 1), parallel_cells(1, 2)
        f = NFunctor(dom=single, cod=double, maps=tuple({c: c for c in lv} for lv in single.cells))
        assert is_bijective(f, [0])
        assert not is_bijective(f)


class TestTruncateAndGenerate:
    def test_truncate_drops_top_levels(self):
        two = globe(2)
        one = validate_ncat(truncate(two, 1))
        assert one.n == 1
        assert one.cells == two.cells[:2]

    def test_truncate_rejects_bad_level(self):
        with pytest.raises(ValueError):
            truncate(chain(1), 2)

    def test_generated_subcategory_closes_under_boundaries_and_composites(self):
        three = chain(3)
        sub, inclusion = generated_subcategory(three, [[], ["0:1[*]", "1:2[*]"]])
        validate_ncat(sub)
        assert "0:2[*;*]" in sub.cells[1]
        assert "3" not in sub.cells[0]
        assert set(sub.cells[0]) == {"0", "1", "2"}
        assert inclusion.cod == three

    def test_generated_subcategory_of_nothing_is_empty(self):
        sub, _ = generated_subcategory(chain(1), [])
        assert sub.cells_count() == (0, 0)


class TestCellNames:
    @pytest.mark.parametrize("name", ["f", "0:1[*]", "(a|b)", "[h<=h2]", "((a|b)|c)", "s0:0:1[]"])
    def test_plain_names(self, name):
        assert is_plain_cell_name(name)

    @pytest.mark.parametrize("name", ["a|b", "(a|b", "a)", "[x", "x)(y"])
    def test_ambiguous_names(self, name):
        assert not is_plain_cell_name(name)
