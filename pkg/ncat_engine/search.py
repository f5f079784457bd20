"""Exhaustive n-functor search and isomorphism testing.

Every universal-property check, diagonal filler, functor sampler and
isomorphism test is built on ``iter_functors``: a levelwise backtracking search
in which identity cells, composites of already assigned cells, and the
boundaries of pinned cells are forced rather than guessed.
"""

from __future__ import annotations

import logging
from collections import Counter, defaultdict, deque
from collections.abc import Callable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from enum import IntEnum, auto
from functools import lru_cache

from ncat_engine.config import load_settings
from ncat_engine.ncat import IsoWitness, NCat, NFunctor, identity_functor, invert

logger = logging.getLogger(__name__)

Allowed = Callable[[int, str, str], bool]


class EnumerationLimitError(Exception):
    """Raised when an input exceeds the configured cells-per-level cap."""

    pass


class Placement(IntEnum):
    """How the image of a cell is obtained during search."""

    IDENTITY = auto()  # Forced: identity on the image of a lower cell
    PINNED = auto()  # Forced by a fixed assignment
    DERIVED = auto()  # Forced: composite of two earlier cells
    FREE = auto()  # Guessed among cells with matching boundaries


@dataclass
class _Position:
    cell: str
    placement: Placement
    source: str | None = None  # lower cell for IDENTITY
    derivation: tuple[int, str, str] | None = None  # (i, later, earlier) for DERIVED
    checks: list[tuple[int, str, str, str]] = field(default_factory=list)


def ensure_within_limit(category: NCat, max_cells: int | None = None) -> None:
    """Raise if any level of ``category`` exceeds the cell cap.

    Raises:
        EnumerationLimitError: If a level is larger than the cap.
    """
    cap = load_settings().max_cells if max_cells is None else max_cells
    for level, cells in enumerate(category.cells):
        if len(cells) > cap:
            raise EnumerationLimitError(
                f"level {level} has {len(cells)} cells, above the cap of {cap}"
            )


def _propagate_pins(
    dom: NCat, cod: NCat, fixed: Sequence[Mapping[str, str]] | None
) -> list[dict[str, str]] | None:
    pins: list[dict[str, str]] = [{} for _ in range(dom.n + 1)]
    if fixed is None:
        return pins
    for level, table in enumerate(fixed):
        for cell, image in table.items():
            if cell not in dom.cell_sets[level] or image not in cod.cell_sets[level]:
                return None
            if pins[level].setdefault(cell, image) != image:
                return None
    for level in range(dom.n, 0, -1):
        for cell, image in list(pins[level].items()):
            for dom_table, cod_table in ((dom.src, cod.src), (dom.tgt, cod.tgt)):
                below = dom_table[level][cell]
                if pins[level - 1].setdefault(below, cod_table[level][image]) != (
                    cod_table[level][image]
                ):
                    return None
    return pins


def _plan_level(dom: NCat, level: int, pins: Mapping[str, str]) -> list[_Position]:
    by_argument: dict[str, list[tuple[int, str, str, str]]] = defaultdict(list)
    entries: list[tuple[int, str, str, str]] = []
    for i in range(level):
        for (later, earlier), result in dom.comp.get((level, i), {}).items():
            entry = (i, later, earlier, result)
            entries.append(entry)
            by_argument[later].append(entry)
            by_argument[earlier].append(entry)

    positions: list[_Position] = []
    index: dict[str, int] = {}
    ready: deque[tuple[str, tuple[int, str, str]]] = deque()

    def place(position: _Position) -> None:
        index[position.cell] = len(positions)
        positions.append(position)
        for i, later, earlier, result in by_argument[position.cell]:
            if later in index and earlier in index and result not in index:
                ready.append((result, (i, later, earlier)))

    if level > 0:
        for below in dom.cells[level - 1]:
            unit = dom.idn[level][below]
            if unit not in index:
                place(_Position(unit, Placement.IDENTITY, source=below))
    for cell in sorted(pins):
        if cell not in index:
            place(_Position(cell, Placement.PINNED))
    remaining = iter(dom.cells[level])
    while len(positions) < len(dom.cells[level]):
        if ready:
            cell, derivation = ready.popleft()
            if cell not in index:
                place(_Position(cell, Placement.DERIVED, derivation=derivation))
            continue
        cell = next(remaining)
        if cell not in index:
            place(_Position(cell, Placement.FREE))

    for entry in entries:
        _, later, earlier, result = entry
        last = max(index[later], index[earlier], index[result])
        positions[last].checks.append(entry)
    return positions


class _LevelSearch:
    """Backtracking over the cells of one level, given the levels below."""

    def __init__(
        self,
        dom: NCat,
        cod: NCat,
        level: int,
        maps: list[dict[str, str]],
        pins: Mapping[str, str],
        allowed: Allowed | None,
        injective: bool,
    ):
        self.dom = dom
        self.cod = cod
        self.level = level
        self.maps = maps
        self.pins = pins
        self.allowed = allowed
        self.injective = injective
        self.positions = _plan_level(dom, level, pins)
        self.by_boundary: dict[tuple[str, str], list[str]] = defaultdict(list)
        if level > 0:
            for cell in cod.cells[level]:
                key = (cod.src[level][cell], cod.tgt[level][cell])
                self.by_boundary[key].append(cell)

    def _candidates(self, position: _Position) -> list[str]:
        level, current = self.level, self.maps[self.level]
        match position.placement:
            case Placement.IDENTITY:
                assert position.source is not None
                return [self.cod.idn[level][self.maps[level - 1][position.source]]]
            case Placement.PINNED:
                return [self.pins[position.cell]]
            case Placement.DERIVED:
                assert position.derivation is not None
                i, later, earlier = position.derivation
                image = self.cod.compose_cells(level, i, current[later], current[earlier])
                return [] if image is None else [image]
            case _:
                if level == 0:
                    return list(self.cod.cells[0])
                below = self.maps[level - 1]
                key = (
                    below[self.dom.src[level][position.cell]],
                    below[self.dom.tgt[level][position.cell]],
                )
                return self.by_boundary.get(key, [])

    def _accepts(self, position: _Position, image: str, used: set[str]) -> bool:
        level, cell = self.level, position.cell
        if level > 0:
            below = self.maps[level - 1]
            if self.cod.src[level][image] != below[self.dom.src[level][cell]]:
                return False
            if self.cod.tgt[level][image] != below[self.dom.tgt[level][cell]]:
                return False
        if cell in self.pins and self.pins[cell] != image:
            return False
        if self.injective and image in used:
            return False
        if self.allowed is not None and not self.allowed(level, cell, image):
            return False
        return True

    def _checks_hold(self, position: _Position) -> bool:
        current = self.maps[self.level]
        for i, later, earlier, result in position.checks:
            image = self.cod.compose_cells(self.level, i, current[later], current[earlier])
            if image != current[result]:
                return False
        return True

    def run(self) -> Iterator[None]:
        """Yield once per complete assignment of this level (state held in ``maps``)."""
        positions = self.positions
        if not positions:
            yield
            return
        current = self.maps[self.level]
        used: set[str] = set()
        pending: list[Iterator[str]] = [iter(self._candidates(positions[0]))]
        k = 0
        while k >= 0:
            position = positions[k]
            if position.cell in current:
                used.discard(current.pop(position.cell))
            advanced = False
            for image in pending[k]:
                if not self._accepts(position, image, used):
                    continue
                current[position.cell] = image
                if self._checks_hold(position):
                    used.add(image)
                    advanced = True
                    break
                del current[position.cell]
            if not advanced:
                pending.pop()
                k -= 1
                continue
            if k == len(positions) - 1:
                yield
                continue
            k += 1
            pending.append(iter(self._candidates(positions[k])))


def iter_functors(
    dom: NCat,
    cod: NCat,
    *,
    fixed: Sequence[Mapping[str, str]] | None = None,
    allowed: Allowed | None = None,
    injective: bool = False,
    enforce_limit: bool = True,
) -> Iterator[NFunctor]:
    """Enumerate every n-functor ``dom -> cod`` meeting the constraints.

    Args:
        dom: Domain n-category (validated).
        cod: Codomain n-category (validated).
        fixed: Optional per-level pinned images. Boundaries of pinned cells are pinned too.
        allowed: Optional predicate ``(level, cell, image)`` every assignment must pass.
        injective: Require every level map to be injective.
        enforce_limit: Apply the cells-per-level cap to both ends. Searches whose every
            cell is forced may switch it off.

    Yields:
        Functors in a deterministic order.

    Raises:
        EnumerationLimitError: If ``enforce_limit`` and an end exceeds the cap.
    """
    if enforce_limit:
        ensure_within_limit(dom)
        ensure_within_limit(cod)
    if dom.n != cod.n:
        return
    pins = _propagate_pins(dom, cod, fixed)
    if pins is None:
        return
    maps: list[dict[str, str]] = [{} for _ in range(dom.n + 1)]
    searches = [
        _LevelSearch(dom, cod, level, maps, pins[level], allowed, injective)
        for level in range(dom.n + 1)
    ]

    def descend(level: int) -> Iterator[NFunctor]:
        if level > dom.n:
            yield NFunctor(dom=dom, cod=cod, maps=tuple(dict(m) for m in maps))
            return
        for _ in searches[level].run():
            yield from descend(level + 1)

    yield from descend(0)


def count_functors(
    dom: NCat,
    cod: NCat,
    *,
    limit: int | None = None,
    fixed: Sequence[Mapping[str, str]] | None = None,
    allowed: Allowed | None = None,
) -> int:
    """Number of functors ``dom -> cod``, stopping early once ``limit`` is reached."""
    count = 0
    for _ in iter_functors(dom, cod, fixed=fixed, allowed=allowed):
        count += 1
        if limit is not None and count >= limit:
            break
    return count


def cell_signatures(category: NCat) -> list[dict[str, tuple[int, ...]]]:
    """Relabeling-invariant signature of every cell, per level."""
    n = category.n
    counts: list[dict[str, Counter[str]]] = [defaultdict(Counter) for _ in range(n + 1)]
    for level in range(1, n + 1):
        for cell in category.cells[level]:
            counts[level - 1][category.src[level][cell]]["out"] += 1
            counts[level - 1][category.tgt[level][cell]]["in"] += 1
    for (j, i), table in category.comp.items():
        for (later, earlier), result in table.items():
            counts[j][later][f"later{i}"] += 1
            counts[j][earlier][f"earlier{i}"] += 1
            counts[j][result][f"result{i}"] += 1
    roles = ("later", "earlier", "result")
    keys = ["out", "in"] + [f"{role}{i}" for i in range(n) for role in roles]
    signatures: list[dict[str, tuple[int, ...]]] = []
    for level in range(n + 1):
        signatures.append(
            {
                cell: (int(category.is_identity(level, cell)) if level else 0,)
                + tuple(counts[level][cell][key] for key in keys)
                for cell in category.cells[level]
            }
        )
    return signatures


def invariant_key(category: NCat) -> tuple[object, ...]:
    """A cheap isomorphism invariant: level sizes plus sorted signature multisets."""
    return (category.n,) + tuple(
        tuple(sorted(level.values())) for level in cell_signatures(category)
    )


def find_isomorphism(a: NCat, b: NCat) -> IsoWitness | None:
    """Search exhaustively for an isomorphism ``a -> b``.

    Returns:
        A witness pair, or None when no isomorphism exists.
    """
    if a == b:
        identity = identity_functor(a)
        return IsoWitness(forward=identity, backward=identity)
    if a.n != b.n or a.cells_count() != b.cells_count():
        return None
    if any(len(a.comp.get(key, {})) != len(b.comp.get(key, {})) for key in a.comp):
        return None
    if invariant_key(a) != invariant_key(b):
        return None
    sig_a, sig_b = cell_signatures(a), cell_signatures(b)

    def same_signature(level: int, cell: str, image: str) -> bool:
        return sig_a[level][cell] == sig_b[level][image]

    for forward in iter_functors(a, b, allowed=same_signature, injective=True):
        logger.debug("isomorphism found")
        return IsoWitness(forward=forward, backward=invert(forward))
    return None


ISO_CACHE_SIZE = 1024


@lru_cache(maxsize=ISO_CACHE_SIZE)
def _isomorphic(a: NCat, b: NCat) -> bool:
    return find_isomorphism(a, b) is not None


def are_isomorphic(a: NCat, b: NCat) -> bool:
    """Memoized isomorphism test.

    The pair is ordered by fingerprint, so ``(a, b)`` and ``(b, a)`` share one of
    the ``ISO_CACHE_SIZE`` least recently used entries.
    """
    if b.fingerprint < a.fingerprint:
        a, b = b, a
    return _isomorphic(a, b)


def isomorphism_cache_info() -> tuple[int, int, int | None, int]:
    """Hits, misses, maximum size and current size of the isomorphism cache."""
    return _isomorphic.cache_info()


def clear_isomorphism_cache() -> None:
    _isomorphic.cache_clear()
