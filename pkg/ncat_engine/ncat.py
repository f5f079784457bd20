"""Immutable models for finite strict n-categories and n-functors."""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property

CompTable = dict[tuple[str, str], str]


class CompositionError(Exception):
    """Raised when two n-functors do not meet at the same middle object."""

    pass


def format_pair_key(later: str, earlier: str) -> str:
    """Render a composable pair as the ``later|earlier`` key used in files."""
    return f"{later}|{earlier}"


def is_plain_cell_name(name: str) -> bool:
    """Whether ``name`` has balanced brackets and no ``|`` outside them.

    Pair names ``(a|b)`` and pair keys ``later|earlier`` are only unambiguous
    when every cell name is plain.
    """
    depth = 0
    for char in name:
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
            if depth < 0:
                return False
        elif char == "|" and depth == 0:
            return False
    return depth == 0


@dataclass(frozen=True, eq=True)
class NCat:
    """A finite strict n-category.

    Tables are indexed by the level of the cells they act on. ``src[l]`` and ``tgt[l]``
    send ``cells[l]`` to ``cells[l - 1]``; ``idn[l]`` sends ``cells[l - 1]`` to
    ``cells[l]``. Entry 0 of ``src``, ``tgt`` and ``idn`` is an empty placeholder so
    that the indices line up with the levels.

    ``comp[(j, i)]`` is the partial composition of j-cells along i-cells, keyed by
    ``(later, earlier)``: the earlier cell is applied first.

    Instances are not validated on construction; see ``ncat_engine.validator``.

    Attributes:
        n: Top level, at least 1.
        cells: Sorted cell names per level 0..n.
        src: Source tables, one per level.
        tgt: Target tables, one per level.
        idn: Identity tables, one per level.
        comp: Composition tables for every pair i < j.
    """

    n: int
    cells: tuple[tuple[str, ...], ...]
    src: tuple[dict[str, str], ...]
    tgt: tuple[dict[str, str], ...]
    idn: tuple[dict[str, str], ...]
    comp: dict[tuple[int, int], CompTable]

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    @cached_property
    def cell_sets(self) -> tuple[frozenset[str], ...]:
        """Cells per level as frozensets, for membership tests."""
        return tuple(frozenset(level) for level in self.cells)

    @cached_property
    def identity_cells(self) -> tuple[frozenset[str], ...]:
        """Cells per level that are identities on a lower cell."""
        return (frozenset(),) + tuple(
            frozenset(self.idn[level].values()) for level in range(1, self.n + 1)
        )

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        grouped: dict[tuple[str, str], list[str]] = {}
        for cell in self.cells[self.n]:
            key = (self.src[self.n][cell], self.tgt[self.n][cell])
            grouped.setdefault(key, []).append(cell)
        return {key: tuple(sorted(members)) for key, members in grouped.items()}

    @cached_property
    def fingerprint(self) -> str:
        """Deterministic serialization of the full structure."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def to_dict(self) -> dict[str, object]:
        """Plain-data form matching the NCat file layout."""
        return {
            "n": self.n,
            "cells": [list(level) for level in self.cells],
            "src": [dict(sorted(table.items())) for table in self.src[1:]],
            "tgt": [dict(sorted(table.items())) for table in self.tgt[1:]],
            "idn": [dict(sorted(table.items())) for table in self.idn[1:]],
            "comp": {
                f"{j},{i}": {
                    format_pair_key(later, earlier): result
                    for (later, earlier), result in sorted(table.items())
                }
                for (j, i), table in sorted(self.comp.items())
            },
        }

    def cells_count(self) -> tuple[int, ...]:
        """Number of cells at each level."""
        return tuple(len(level) for level in self.cells)

    def has_cell(self, level: int, cell: str) -> bool:
        return cell in self.cell_sets[level]

    def is_identity(self, level: int, cell: str) -> bool:
        """Whether ``cell`` is the identity on some (level - 1)-cell."""
        return cell in self.identity_cells[level]

    def bnd_src(self, cell: str, level: int, i: int) -> str:
        """Iterated source of a level-``level`` cell down to level ``i``."""
        while level > i:
            cell = self.src[level][cell]
            level -= 1
        return cell

    def bnd_tgt(self, cell: str, level: int, i: int) -> str:
        """Iterated target of a level-``level`` cell down to level ``i``."""
        while level > i:
            cell = self.tgt[level][cell]
            level -= 1
        return cell

    def identity_tower(self, cell: str, i: int, j: int) -> str:
        """Iterated identity of an i-cell, lifted to level j."""
        for level in range(i + 1, j + 1):
            cell = self.idn[level][cell]
        return cell

    def composable(self, j: int, i: int, later: str, earlier: str) -> bool:
        """Whether two j-cells meet along an i-cell."""
        return self.bnd_src(later, j, i) == self.bnd_tgt(earlier, j, i)

    def compose_cells(self, j: int, i: int, later: str, earlier: str) -> str | None:
        """Composite of two j-cells along i, or None if the table has no entry."""
        return self.comp.get((j, i), {}).get((later, earlier))

    def hom(self, h: str, h2: str) -> tuple[str, ...]:
        """The n-cells with source ``h`` and target ``h2``."""
        return self._homs.get((h, h2), ())

    def nonempty_homs(self) -> list[tuple[str, str]]:
        """Boundary pairs that bound at least one n-cell, sorted."""
        return sorted(self._homs)

    def hom_pairs(self) -> Iterable[tuple[str, str]]:
        """Ordered pairs of parallel (n-1)-cells, in lexicographic order."""
        below = self.n - 1
        for h in self.cells[below]:
            for h2 in self.cells[below]:
                if below == 0 or (
                    self.src[below][h] == self.src[below][h2]
                    and self.tgt[below][h] == self.tgt[below][h2]
                ):
                    yield h, h2


@dataclass(frozen=True, eq=True)
class NFunctor:
    """A level-indexed family of cell maps between two n-categories.

    Attributes:
        dom: Domain n-category.
        cod: Codomain n-category.
        maps: One total map per level 0..n.
    """

    dom: NCat
    cod: NCat
    maps: tuple[dict[str, str], ...]

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, json.dumps([sorted(m.items()) for m in self.maps])))

    @property
    def n(self) -> int:
        return self.dom.n

    def __call__(self, level: int, cell: str) -> str:
        return self.maps[level][cell]

    def to_dict(self) -> dict[str, object]:
        return {
            "dom": self.dom.to_dict(),
            "cod": self.cod.to_dict(),
            "maps": [dict(sorted(m.items())) for m in self.maps],
        }


@dataclass(frozen=True)
class IsoWitness:
    """A pair of mutually inverse n-functors."""

    forward: NFunctor
    backward: NFunctor


def make_ncat(
    n: int,
    cells: Sequence[Iterable[str]],
    src: Sequence[Mapping[str, str]],
    tgt: Sequence[Mapping[str, str]],
    idn: Sequence[Mapping[str, str]],
    comp: Mapping[tuple[int, int], Mapping[tuple[str, str], str]],
) -> NCat:
    """Build an NCat from level-indexed tables.

    ``src``, ``tgt`` and ``idn`` must have length ``n + 1`` with entry 0 ignored.
    Missing composition tables are filled in as empty.
    """
    tables = {(j, i): dict(comp.get((j, i), {})) for j in range(1, n + 1) for i in range(j)}
    extra = set(comp) - set(tables)
    for key in extra:
        tables[key] = dict(comp[key])
    return NCat(
        n=n,
        cells=tuple(tuple(sorted(set(level))) for level in cells),
        src=({},) + tuple(dict(src[level]) for level in range(1, n + 1)),
        tgt=({},) + tuple(dict(tgt[level]) for level in range(1, n + 1)),
        idn=({},) + tuple(dict(idn[level]) for level in range(1, n + 1)),
        comp=tables,
    )


def identity_functor(category: NCat) -> NFunctor:
    """The identity n-functor on ``category``."""
    return NFunctor(
        dom=category,
        cod=category,
        maps=tuple({cell: cell for cell in level} for level in category.cells),
    )


def compose(g: NFunctor, f: NFunctor) -> NFunctor:
    """Levelwise composite ``g ∘ f`` (f first).

    Raises:
        CompositionError: If ``f.cod`` is not ``g.dom``.
    """
    if f.cod is not g.dom and f.cod != g.dom:
        raise CompositionError("codomain of the first functor is not the domain of the second")
    return NFunctor(
        dom=f.dom,
        cod=g.cod,
        maps=tuple(
            {cell: g.maps[level][image] for cell, image in f.maps[level].items()}
            for level in range(f.dom.n + 1)
        ),
    )


def invert(f: NFunctor) -> NFunctor:
    """Inverse of a levelwise bijective n-functor.

    Raises:
        ValueError: If some level map is not a bijection.
    """
    maps = []
    for level in range(f.dom.n + 1):
        inverse = {image: cell for cell, image in f.maps[level].items()}
        if len(inverse) != len(f.maps[level]) or len(inverse) != len(f.cod.cells[level]):
            raise ValueError(f"level {level} map is not a bijection")
        maps.append(inverse)
    return NFunctor(dom=f.cod, cod=f.dom, maps=tuple(maps))


def is_bijective(f: NFunctor, levels: Iterable[int] | None = None) -> bool:
    """Whether the level maps (all, or the given levels) are bijections."""
    for level in range(f.dom.n + 1) if levels is None else levels:
        images = set(f.maps[level].values())
        if len(images) != len(f.dom.cells[level]) or len(images) != len(f.cod.cells[level]):
            return False
    return True


def truncate(category: NCat, k: int) -> NCat:
    """Drop every level above ``k`` (1 <= k <= n)."""
    if not 1 <= k <= category.n:
        raise ValueError(f"cannot truncate a {category.n}-category to level {k}")
    return make_ncat(
        k,
        category.cells[: k + 1],
        category.src[: k + 1],
        category.tgt[: k + 1],
        category.idn[: k + 1],
        {key: table for key, table in category.comp.items() if key[0] <= k},
    )


def generated_subcategory(
    category: NCat, seeds: Sequence[Iterable[str]]
) -> tuple[NCat, NFunctor]:
    """Smallest sub-n-category containing the seed cells.

    The closure adds boundaries, identities and every defined composite until
    nothing changes.

    Args:
        category: Ambient n-category.
        seeds: Seed cells per level 0..n (shorter sequences are padded).

    Returns:
        The sub-n-category and its inclusion into ``category``.
    """
    n = category.n
    kept: list[set[str]] = [set() for _ in range(n + 1)]
    for level, level_seeds in enumerate(seeds):
        kept[level].update(level_seeds)

    changed = True
    while changed:
        changed = False
        for level in range(n, 0, -1):
            for cell in list(kept[level]):
                for boundary in (category.src[level][cell], category.tgt[level][cell]):
                    if boundary not in kept[level - 1]:
                        kept[level - 1].add(boundary)
                        changed = True
        for level in range(1, n + 1):
            for cell in list(kept[level - 1]):
                unit = category.idn[level][cell]
                if unit not in kept[level]:
                    kept[level].add(unit)
                    changed = True
        for (j, i), table in category.comp.items():
            for (later, earlier), result in table.items():
                if later in kept[j] and earlier in kept[j] and result not in kept[j]:
                    kept[j].add(result)
                    changed = True

    sub = make_ncat(
        n,
        kept,
        [{}] + [{c: category.src[lv][c] for c in kept[lv]} for lv in range(1, n + 1)],
        [{}] + [{c: category.tgt[lv][c] for c in kept[lv]} for lv in range(1, n + 1)],
        [{}] + [{c: category.idn[lv][c] for c in kept[lv - 1]} for lv in range(1, n + 1)],
        {
            (j, i): {
                pair: result
                for pair, result in table.items()
                if pair[0] in kept[j] and pair[1] in kept[j]
            }
            for (j, i), table in category.comp.items()
        },
    )
    inclusion = NFunctor(
        dom=sub, cod=category, maps=tuple({c: c for c in level} for level in sub.cells)
    )
    return sub, inclusion
