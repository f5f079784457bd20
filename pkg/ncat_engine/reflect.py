"""The reflection of n-categories into n-preorders.

The reflector keeps every level below n and identifies n-cells that share both
source and target. Each class is named by its least member.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ncat_engine.ncat import NCat, NFunctor, make_ncat
from ncat_engine.search import iter_functors

logger = logging.getLogger(__name__)


class ReflectionError(Exception):
    """Raised when a composite fails to descend to classes (invalid input)."""

    pass


@dataclass(frozen=True)
class ReflectionResult:
    """An n-preorder together with the unit from the original n-category.

    Attributes:
        image: The reflected n-preorder.
        unit: Quotient map, identity below level n.
    """

    image: NCat
    unit: NFunctor


def npreorder_witness(category: NCat) -> tuple[str, str] | None:
    """First pair of distinct parallel n-cells, or None for an n-preorder."""
    for h, h2 in category.nonempty_homs():
        members = category.hom(h, h2)
        if len(members) > 1:
            return members[0], members[1]
    return None


def is_npreorder(category: NCat) -> bool:
    """Whether any two parallel (n-1)-cells bound at most one n-cell."""
    return npreorder_witness(category) is None


def class_of(category: NCat, cell: str) -> str:
    """Name of the class of an n-cell: the least cell with the same boundary."""
    n = category.n
    return category.hom(category.src[n][cell], category.tgt[n][cell])[0]


def reflect(category: NCat) -> ReflectionResult:
    """Collapse parallel n-cells.

    Args:
        category: A validated n-category.

    Returns:
        The image n-preorder and the unit.

    Raises:
        ReflectionError: If a composite does not descend to classes.
    """
    n = category.n
    quotient = {cell: class_of(category, cell) for cell in category.cells[n]}
    classes = sorted(set(quotient.values()))

    src = list(category.src)
    tgt = list(category.tgt)
    idn = list(category.idn)
    src[n] = {c: category.src[n][c] for c in classes}
    tgt[n] = {c: category.tgt[n][c] for c in classes}
    idn[n] = {cell: quotient[unit] for cell, unit in category.idn[n].items()}

    comp = dict(category.comp)
    for i in range(n):
        table: dict[tuple[str, str], str] = {}
        for (later, earlier), result in category.comp.get((n, i), {}).items():
            key = (quotient[later], quotient[earlier])
            image = quotient[result]
            if table.setdefault(key, image) != image:
                raise ReflectionError(
                    f"composite along {i} of classes {key} is not well defined"
                )
        comp[(n, i)] = table

    image = make_ncat(n, list(category.cells[:n]) + [classes], src, tgt, idn, comp)
    maps = tuple({c: c for c in level} for level in category.cells[:n]) + (quotient,)
    logger.debug(f"reflected {len(category.cells[n])} n-cells onto {len(classes)} classes")
    return ReflectionResult(image=image, unit=NFunctor(dom=category, cod=image, maps=maps))


def induced(
    f: NFunctor,
    dom_image: ReflectionResult | None = None,
    cod_image: ReflectionResult | None = None,
) -> NFunctor:
    """The map ``I f`` between reflections, sending the class of θ to the class of f(θ)."""
    source = reflect(f.dom) if dom_image is None else dom_image
    target = reflect(f.cod) if cod_image is None else cod_image
    n = f.n
    top: dict[str, str] = {}
    for cell, image in f.maps[n].items():
        key, value = source.unit.maps[n][cell], target.unit.maps[n][image]
        if top.setdefault(key, value) != value:
            raise ReflectionError(f"induced map is not well defined on class {key}")
    maps = tuple(dict(m) for m in f.maps[:n]) + (top,)
    return NFunctor(dom=source.image, cod=target.image, maps=maps)


def check_unit_universal(category: NCat, target: NCat) -> bool:
    """Whether every functor into the n-preorder ``target`` factors uniquely through η.

    Both functor spaces are enumerated exhaustively.
    """
    if not is_npreorder(target):
        raise ValueError("the target of the universal property must be an n-preorder")
    result = reflect(category)
    n = category.n
    members: dict[str, list[str]] = {}
    for cell, cls in result.unit.maps[n].items():
        members.setdefault(cls, []).append(cell)

    for t in iter_functors(category, target):
        def through_unit(level: int, cell: str, image: str, t: NFunctor = t) -> bool:
            if level < n:
                return t.maps[level][cell] == image
            return all(t.maps[n][member] == image for member in members[cell])

        found = 0
        for _ in iter_functors(result.image, target, allowed=through_unit):
            found += 1
            if found > 1:
                break
        if found != 1:
            logger.info(f"unit is not universal for a functor into the target ({found} factors)")
            return False
    return True
