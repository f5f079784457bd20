"""Tests for configurations, the descent cover, closures and reflection properties."""

import pytest

from ncat_engine.descent import (
    ClosureError,
    ConfigKind,
    PreconditionError,
    ReflectionProperty,
    SemiLeftExactInstance,
    SimpleInstance,
    StableUnitsInstance,
    build_edm,
    closure_relation,
    configurations,
    is_edm_sufficient,
    preorder_closure,
    preorder_closure_oracle,
    relation_cell,
    verify_reflection_property,
)
from ncat_engine.ncat import NFunctor, identity_functor
from ncat_engine.reflect import is_npreorder, reflect
from ncat_engine.shapes import chain, globe, parallel_cells
from ncat_engine.validator import check_functor, check_ncat
from testkit.library import discrete, parallel_pair


def objects_of_arrow() -> NFunctor:
    """The two objects of the walking arrow, without the arrow."""
    return NFunctor(
        dom=discrete(["0", "1"]),
        cod=chain(1),
        maps=({"0": "0", "1": "1"}, {"1_0": "0:0[]", "1_1": "1:1[]"}),
    )


def collapse_pair() -> NFunctor:
    top = {"0:0[]": "0:0[]", "1:1[]": "1:1[]", "theta1": "0:1[*]", "theta2": "0:1[*]"}
    return NFunctor(dom=parallel_pair(), cod=chain(1), maps=({"0": "0", "1": "1"}, top))


class TestConfigurations:
    @pytest.mark.parametrize("r,count", [(1, 5), (2, 15), (3, 35)])
    def test_composable_triples_of_a_chain(self, r, count):
        configs = configurations(chain(r))
        assert len(configs) == count
        assert {c.kind for c in configs} == {ConfigKind.ARROWS}

    def test_two_dimensional_configurations_have_both_kinds(self):
        configs = configurations(globe(2))
        assert {c.kind for c in configs} == {ConfigKind.VERTICAL, ConfigKind.HORIZONTAL}
        assert all((c.j, c.i) == (1, 0) for c in configs)
        assert all(len(row) == 2 for c in configs for row in c.cells)


class TestEdmSufficiency:
    def test_identity_is_sufficient(self):
        assert is_edm_sufficient(identity_functor(parallel_cells(2, 2)))

    def test_missing_arrow_is_reported(self):
        verdict = is_edm_sufficient(objects_of_arrow())
        assert not verdict
        assert verdict.missing is not None
        assert verdict.missing.cells == (("0:0[]",), ("0:0[]",), ("0:1[*]",))


class TestBuildEdm:
    def test_one_dimensional_cover_uses_chains(self):
        cover = build_edm(parallel_pair())
        assert len(cover.configs) == len(configurations(parallel_pair()))
        assert cover.fallbacks == 0
        assert check_ncat(cover.total) is None
        assert check_functor(cover.projection) is None
        assert is_npreorder(cover.total)
        assert is_edm_sufficient(cover.projection)
        assert "s0:0" in cover.total.cells[0]

    def test_cover_of_an_npreorder_needs_no_free_shapes(self):
        cover = build_edm(globe(2))
        assert cover.fallbacks == 0
        assert check_functor(cover.projection) is None
        assert is_npreorder(cover.total)
        assert is_edm_sufficient(cover.projection)


class TestPreorderClosure:
    def test_generator_is_related_one_way(self):
        closed = preorder_closure(parallel_pair(), [("theta1", "theta2")])
        assert check_ncat(closed) is None
        assert is_npreorder(closed)
        assert relation_cell("theta1", "theta2") in closed.cells[2]
        assert relation_cell("theta2", "theta1") not in closed.cells[2]
        assert relation_cell("theta2", "theta2") in closed.cells[2]

    def test_relation_is_transitive(self):
        relation = closure_relation(
            parallel_cells(1, 3), [("theta1", "theta2"), ("theta2", "theta3")]
        )
        assert ("theta1", "theta3") in relation
        assert ("theta3", "theta1") not in relation

    @pytest.mark.parametrize(
        "generators",
        [[], [("theta1", "theta2")], [("theta1", "theta2"), ("theta2", "theta1")]],
    )
    def test_closure_matches_the_oracle(self, generators):
        skeleton = parallel_cells(1, 2)
        assert closure_relation(skeleton, generators) == preorder_closure_oracle(
            skeleton, generators
        )

    @pytest.mark.parametrize("pair", [("0:0[]", "theta1"), ("missing", "theta1")])
    def test_bad_generators_are_rejected(self, pair):
        with pytest.raises(ClosureError):
            closure_relation(parallel_pair(), [pair])

    def test_oracle_refuses_large_searches(self):
        with pytest.raises(ValueError):
            preorder_closure_oracle(parallel_cells(1, 4), [])


class TestReflectionProperties:
    def test_stable_units(self):
        instance = StableUnitsInstance(f=collapse_pair(), g=identity_functor(chain(1)))
        assert verify_reflection_property(ReflectionProperty.STABLE_UNITS, instance)

    def test_stable_units_need_an_npreorder_vertex(self):
        one = identity_functor(parallel_pair())
        with pytest.raises(PreconditionError):
            verify_reflection_property(
                ReflectionProperty.STABLE_UNITS, StableUnitsInstance(f=one, g=one)
            )

    def test_stable_units_need_a_shared_codomain(self):
        instance = StableUnitsInstance(
            f=identity_functor(chain(1)), g=identity_functor(chain(2))
        )
        with pytest.raises(PreconditionError):
            verify_reflection_property(ReflectionProperty.STABLE_UNITS, instance)

    def test_semi_left_exact(self):
        pp = parallel_pair()
        image = reflect(pp).image
        phi = NFunctor(
            dom=chain(1),
            cod=image,
            maps=({"0": "0", "1": "1"}, {"0:0[]": "0:0[]", "0:1[*]": "theta1", "1:1[]": "1:1[]"}),
        )
        instance = SemiLeftExactInstance(a=pp, s=chain(1), phi=phi)
        assert verify_reflection_property(ReflectionProperty.SEMI_LEFT_EXACT, instance)

    def test_semi_left_exact_needs_an_npreorder(self):
        pp = parallel_pair()
        instance = SemiLeftExactInstance(a=pp, s=pp, phi=reflect(pp).unit)
        with pytest.raises(PreconditionError):
            verify_reflection_property(ReflectionProperty.SEMI_LEFT_EXACT, instance)

    @pytest.mark.parametrize("make", [collapse_pair, objects_of_arrow])
    def test_simple(self, make):
        instance = SimpleInstance(f=make())
        assert verify_reflection_property(ReflectionProperty.SIMPLE, instance)

    def test_instance_must_match_the_property(self):
        instance = StableUnitsInstance(f=collapse_pair(), g=identity_functor(chain(1)))
        with pytest.raises(PreconditionError):
            verify_reflection_property(ReflectionProperty.SIMPLE, instance)
