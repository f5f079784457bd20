"""Instance checks of the conditions a base reflection needs before it can be derived."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Generic

from enriched.base import Base, MorT, ObjT
from ncat_engine.reflect import ReflectionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConditionCheck:
    """One condition evaluated on one sample (or pair of samples)."""

    name: str
    objects: tuple[str, ...]
    passed: bool
    witness: str = ""


@dataclass
class BaseConditionsReport(Generic[ObjT, MorT]):
    base: Base[ObjT, MorT]
    checks: list[ConditionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> list[ConditionCheck]:
        return [check for check in self.checks if not check.passed]


def _unit_is_identity(base: Base[ObjT, MorT], x: ObjT) -> bool:
    image, unit = base.reflect(x)
    return image == x and base.morphisms_equal(unit, base.identity(x))


def _products_preserved(base: Base[ObjT, MorT], a: ObjT, b: ObjT) -> tuple[bool, str]:
    image_a, unit_a = base.reflect(a)
    image_b, unit_b = base.reflect(b)
    source = base.product(a, b)
    target = base.product(image_a, image_b)
    try:
        comparison = base.reflect_morphism(base.product_map(unit_a, unit_b, source, target))
    except ReflectionError as e:
        return False, f"F(η × η) is not defined: {e}"
    if not base.is_isomorphism(comparison):
        return False, "F(η × η) is not an isomorphism"
    return True, ""


def check_base_conditions(
    base: Base[ObjT, MorT],
    sample: Sequence[ObjT],
    labels: Sequence[str] | None = None,
) -> BaseConditionsReport[ObjT, MorT]:
    """Check the reflection of ``base`` on sample objects.

    Three conditions are checked: ``F(η_A × η_B)`` is invertible for every
    ordered pair of samples, the unit of the terminal object is the identity,
    and the unit of every reflected sample is the identity.

    Args:
        base: The base to check.
        sample: Objects to check on.
        labels: Names for the samples in the report; defaults to their indices.

    Returns:
        One check per condition and sample.
    """
    names = [str(k) for k in range(len(sample))] if labels is None else list(labels)
    report: BaseConditionsReport[ObjT, MorT] = BaseConditionsReport(base)
    one = base.terminal()
    passed = _unit_is_identity(base, one)
    report.checks.append(ConditionCheck("terminal-unit", ("terminal",), passed))
    for label, x in zip(names, sample):
        image, _ = base.reflect(x)
        passed = _unit_is_identity(base, image)
        witness = "" if passed else "unit of the reflection is not the identity"
        report.checks.append(ConditionCheck("reflected-unit", (label,), passed, witness))
    for left, a in zip(names, sample):
        for right, b in zip(names, sample):
            passed, witness = _products_preserved(base, a, b)
            report.checks.append(ConditionCheck("product-units", (left, right), passed, witness))
    for failure in report.failures():
        logger.info(f"{base.name}: {failure.name} fails on {failure.objects}: {failure.witness}")
    return report
