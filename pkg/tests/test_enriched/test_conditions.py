"""Tests for the base condition checks."""

from enriched.conditions import check_base_conditions
from enriched.ncat_base import NCatBase
from ncat_engine.limits import to_terminal
from ncat_engine.ncat import NCat, NFunctor, identity_functor
from ncat_engine.reflect import is_npreorder
from ncat_engine.shapes import chain, parallel_cells
from testkit.library import idempotent, parallel_pair


class CollapsingBase(NCatBase):
    """Sends every category that is not a preorder to the terminal one.

    The unit of such a reflection does not respect products.
    """

    def __init__(self):
        super().__init__(1, iterated=False)

    @property
    def name(self) -> str:
        return "collapsing"

    def reflect(self, x: NCat) -> tuple[NCat, NFunctor]:
        if is_npreorder(x):
            return x, identity_functor(x)
        return self.terminal(), to_terminal(x, self.terminal())


class TestBaseConditions:
    def test_direct_reflection_passes(self):
        samples = [parallel_pair(), chain(1), idempotent()]
        report = check_base_conditions(NCatBase(1), samples)
        assert report.passed
        assert len(report.checks) == 1 + 3 + 9
        assert report.failures() == []

    def test_iterated_reflection_passes(self):
        samples = [parallel_cells(2, 2), parallel_cells(2, 0)]
        report = check_base_conditions(NCatBase(2), samples, labels=["doubled", "empty"])
        assert report.passed
        assert ("doubled", "empty") in {check.objects for check in report.checks}

    def test_collapsing_reflection_breaks_product_units(self):
        report = check_base_conditions(CollapsingBase(), [parallel_pair(), chain(1)])
        assert not report.passed
        failed = {(check.name, check.objects) for check in report.failures()}
        assert failed == {("product-units", ("0", "1")), ("product-units", ("1", "0"))}
        assert all(check.witness for check in report.failures())
