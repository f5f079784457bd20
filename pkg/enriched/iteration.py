"""n-categories as categories enriched in (n-1)-categories, and the iterated reflection.

``to_enriched`` keeps every cell name of A: the hom ``(a, b)`` holds the cells
of A whose 0-source is ``a`` and whose 0-target is ``b``, one level down.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from itertools import product as cartesian

from enriched.base import Base
from enriched.ncat_base import BaseMismatchError, NCatBase
from enriched.vcat import VCat, derive_reflect
from ncat_engine.limits import TERMINAL_CELL
from ncat_engine.ncat import NCat, NFunctor, make_ncat
from ncat_engine.reflect import reflect

logger = logging.getLogger(__name__)

CellNamer = Callable[[str, str, str], str]


def _require_ncat_base(base: Base[NCat, NFunctor]) -> NCatBase:
    if not isinstance(base, NCatBase):
        raise BaseMismatchError(f"expected a base of finite categories, got {base.name}")
    return base


def _hom_category(category: NCat, a: str, b: str) -> NCat:
    m = category.n - 1
    cells = [
        [
            c
            for c in category.cells[level + 1]
            if category.bnd_src(c, level + 1, 0) == a and category.bnd_tgt(c, level + 1, 0) == b
        ]
        for level in range(m + 1)
    ]
    members = [set(level) for level in cells]
    src: list[dict[str, str]] = [{}]
    tgt: list[dict[str, str]] = [{}]
    idn: list[dict[str, str]] = [{}]
    for level in range(1, m + 1):
        src.append({c: category.src[level + 1][c] for c in cells[level]})
        tgt.append({c: category.tgt[level + 1][c] for c in cells[level]})
        idn.append({c: category.idn[level + 1][c] for c in cells[level - 1]})
    comp = {
        (j, i): {
            pair: result
            for pair, result in category.comp.get((j + 1, i + 1), {}).items()
            if pair[0] in members[j]
        }
        for j in range(1, m + 1)
        for i in range(j)
    }
    return make_ncat(m, cells, src, tgt, idn, comp)


def to_enriched(category: NCat, base: NCatBase | None = None) -> VCat[NCat, NFunctor]:
    """View an n-category (n >= 2) as a category enriched in (n-1)-categories.

    Raises:
        BaseMismatchError: If ``n < 2`` or ``base`` has the wrong dimension.
    """
    if category.n < 2:
        raise BaseMismatchError("only n-categories with n >= 2 have (n-1)-category homs")
    base = NCatBase(category.n - 1) if base is None else base
    if base.m != category.n - 1:
        raise BaseMismatchError(f"base of {base.m}-categories cannot hold {category.n}-categories")
    objects = category.cells[0]
    hom = {(a, b): _hom_category(category, a, b) for a in objects for b in objects}

    comp: dict[tuple[str, str, str], NFunctor] = {}
    for a, b, c in cartesian(objects, repeat=3):
        cone = base.product(hom[(b, c)], hom[(a, b)])
        maps = tuple(
            {
                cell: category.comp[(level + 1, 0)][
                    (cone.p1.maps[level][cell], cone.p2.maps[level][cell])
                ]
                for cell in cone.apex.cells[level]
            }
            for level in range(base.m + 1)
        )
        comp[(a, b, c)] = NFunctor(dom=cone.apex, cod=hom[(a, c)], maps=maps)

    one = base.terminal()
    unit = {
        a: NFunctor(
            dom=one,
            cod=hom[(a, a)],
            maps=tuple(
                {TERMINAL_CELL: category.identity_tower(a, 0, level + 1)}
                for level in range(base.m + 1)
            ),
        )
        for a in objects
    }
    return VCat(base=base, objects=tuple(objects), hom=hom, comp=comp, unit=unit)


def enriched_namer(v: VCat[NCat, NFunctor]) -> CellNamer:
    """Naming of hom cells in ``from_enriched``.

    Names are kept as they are unless the same name occurs in two homs; then
    every cell ``c`` of hom ``(a, b)`` becomes ``"{a}>{b}:{c}"``.
    """
    owner: dict[str, tuple[str, str]] = {}
    for pair in v.pairs():
        for level in v.hom[pair].cells:
            for cell in level:
                if owner.setdefault(cell, pair) != pair:
                    return lambda a, b, cell: f"{a}>{b}:{cell}"
    return lambda a, b, cell: cell


def from_enriched(v: VCat[NCat, NFunctor]) -> NCat:
    """Flatten a category enriched in m-categories into an (m+1)-category.

    Raises:
        BaseMismatchError: If ``v`` is not enriched in finite categories.
    """
    base = _require_ncat_base(v.base)
    m = base.m
    n = m + 1
    name = enriched_namer(v)

    cells: list[list[str]] = [list(v.objects)] + [[] for _ in range(m + 1)]
    src: list[dict[str, str]] = [{} for _ in range(n + 1)]
    tgt: list[dict[str, str]] = [{} for _ in range(n + 1)]
    idn: list[dict[str, str]] = [{} for _ in range(n + 1)]
    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for a, b in v.pairs():
        hom = v.hom[(a, b)]
        for level in range(m + 1):
            for cell in hom.cells[level]:
                here = name(a, b, cell)
                cells[level + 1].append(here)
                if level == 0:
                    src[1][here], tgt[1][here] = a, b
                else:
                    src[level + 1][here] = name(a, b, hom.src[level][cell])
                    tgt[level + 1][here] = name(a, b, hom.tgt[level][cell])
        for level in range(1, m + 1):
            for cell, unit in hom.idn[level].items():
                idn[level + 1][name(a, b, cell)] = name(a, b, unit)
        for (j, i), table in hom.comp.items():
            target = comp.setdefault((j + 1, i + 1), {})
            for (later, earlier), result in table.items():
                target[(name(a, b, later), name(a, b, earlier))] = name(a, b, result)
    for a in v.objects:
        idn[1][a] = name(a, a, v.unit[a].maps[0][TERMINAL_CELL])

    for a, b, c in cartesian(v.objects, repeat=3):
        cone = v.hom_product(a, b, c)
        law = v.comp[(a, b, c)]
        for level in range(m + 1):
            target = comp.setdefault((level + 1, 0), {})
            for cell in cone.apex.cells[level]:
                later = name(b, c, cone.p1.maps[level][cell])
                earlier = name(a, b, cone.p2.maps[level][cell])
                target[(later, earlier)] = name(a, c, law.maps[level][cell])
    return make_ncat(n, cells, src, tgt, idn, comp)


def iterate_reflect(category: NCat) -> NFunctor:
    """Reflect by enriching, reflecting every hom with the base reflector, and flattening.

    The base reflector on (n-1)-categories is itself iterated, down to the
    direct reflection of 1-categories.

    Returns:
        The unit ``category -> image``.
    """
    if category.n == 1:
        return reflect(category).unit
    base = NCatBase(category.n - 1, iterated=True)
    v = to_enriched(category, base)
    image_v, theta = derive_reflect(v)
    image = from_enriched(image_v)
    name = enriched_namer(image_v)

    maps: list[dict[str, str]] = [{a: a for a in category.cells[0]}]
    for level in range(base.m + 1):
        table: dict[str, str] = {}
        for a, b in v.pairs():
            component = theta.homs[(a, b)]
            for cell in v.hom[(a, b)].cells[level]:
                table[cell] = name(a, b, component.maps[level][cell])
        maps.append(table)
    logger.debug(f"iterated reflection of a {category.n}-category through {base.name}")
    return NFunctor(dom=category, cod=image, maps=tuple(maps))
