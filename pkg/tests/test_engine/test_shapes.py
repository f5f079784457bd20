"""Tests for linear shapes, globes and configuration shapes."""

import pytest

from ncat_engine.reflect import is_npreorder
from ncat_engine.shapes import (
    chain,
    config_shape,
    globe,
    globe_top,
    linear,
    linear_cell,
    parallel_cells,
    suspension,
    with_identity_level,
)
from ncat_engine.validator import check_ncat
from testkit.library import idempotent


class TestLinear:
    def test_chain_is_a_total_order(self):
        three = chain(3)
        assert three.cells_count() == (4, 10)
        assert check_ncat(three) is None
        assert three.compose_cells(1, 0, "1:3[*;*]", "0:1[*]") == "0:3[*;*;*]"

    def test_chain_zero_is_a_point(self):
        assert chain(0).cells_count() == (1, 1)

    def test_linear_over_a_monoid_concatenates(self):
        shape = linear(2, idempotent())
        assert check_ncat(shape) is None
        assert shape.n == 2
        # Hom(0, 2) holds pairs of cells of the hom category.
        assert len(shape.hom("0:2[0;0]", "0:2[0;0]")) == 4

    def test_linear_cell_name(self):
        assert linear_cell(0, 2, ["x", "y"]) == "0:2[x;y]"
        assert linear_cell(1, 1, []) == "1:1[]"

    def test_suspension_has_two_objects(self):
        lifted = suspension(idempotent())
        assert lifted.cells[0] == ("0", "1")
        assert check_ncat(lifted) is None


class TestGlobes:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_globe_is_valid(self, d):
        shape = globe(d)
        assert shape.n == d
        assert check_ncat(shape) is None
        assert globe_top(d) in shape.cells[d]

    def test_globe_zero_is_rejected(self):
        with pytest.raises(ValueError):
            globe(0)

    @pytest.mark.parametrize("n,count", [(1, 0), (1, 3), (2, 2), (3, 2)])
    def test_parallel_cells(self, n, count):
        shape = parallel_cells(n, count)
        assert check_ncat(shape) is None
        copies = [c for c in shape.cells[n] if c.startswith("theta")]
        assert len(copies) == count
        assert is_npreorder(shape) == (count <= 1)

    def test_negative_count_is_rejected(self):
        with pytest.raises(ValueError):
            parallel_cells(2, -1)


class TestConfigShapes:
    @pytest.mark.parametrize(
        "vertical,n,j,i",
        [(True, 2, 1, 0), (False, 2, 1, 0), (True, 3, 2, 0), (False, 3, 1, 0), (True, 3, 2, 1)],
    )
    def test_config_shape_is_an_npreorder(self, vertical, n, j, i):
        shape, names = config_shape(vertical, n, j, i)
        assert shape.n == n
        assert check_ncat(shape) is None
        assert is_npreorder(shape)
        assert len(names) == 3 and all(len(row) == 2 for row in names)
        assert all(cell in shape.cell_sets[n] for row in names for cell in row)

    def test_generators_compose_along_the_pair_level(self):
        shape, names = config_shape(True, 2, 1, 0)
        for row in names:
            assert shape.compose_cells(2, 0, row[1], row[0]) is not None

    def test_generators_compose_along_the_triple_level(self):
        shape, names = config_shape(True, 2, 1, 0)
        for t in range(2):
            assert shape.compose_cells(2, 1, names[t + 1][0], names[t][0]) is not None

    def test_invalid_levels(self):
        with pytest.raises(ValueError):
            config_shape(True, 2, 2, 0)


class TestIdentityLevel:
    def test_lift_adds_only_identities(self):
        lifted = with_identity_level(chain(2))
        assert lifted.n == 2
        assert check_ncat(lifted) is None
        assert lifted.identity_cells[2] == frozenset(lifted.cells[2])
        assert is_npreorder(lifted)
