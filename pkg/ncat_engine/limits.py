"""Pointwise finite limits and coproducts of n-categories.

Limits are computed level by level on cell sets, with all structure taken
componentwise. Pair cells are named ``(a|b)``.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from typing import NamedTuple

import networkx as nx

from ncat_engine.ncat import NCat, NFunctor, is_plain_cell_name, make_ncat
from ncat_engine.search import iter_functors

logger = logging.getLogger(__name__)

TERMINAL_CELL = "*"


class CodomainMismatchError(Exception):
    """Raised when the two legs of a cospan do not share a codomain."""

    pass


class DimensionMismatchError(ValueError):
    """Raised when the inputs of a limit or coproduct have different dimensions."""

    pass


class Pullback(NamedTuple):
    """A pullback (or product) apex with its two projections."""

    apex: NCat
    p1: NFunctor
    p2: NFunctor


class Coproduct(NamedTuple):
    """A coproduct apex with one injection per summand."""

    apex: NCat
    injections: tuple[NFunctor, ...]


def pair_name(a: str, b: str) -> str:
    return f"({a}|{b})"


def tagged_name(tag: str, cell: str) -> str:
    return f"{tag}:{cell}"


def terminal(n: int) -> NCat:
    """The terminal n-category: one cell per level."""
    one = {TERMINAL_CELL: TERMINAL_CELL}
    return make_ncat(
        n,
        [[TERMINAL_CELL]] * (n + 1),
        [{}] + [one] * n,
        [{}] + [one] * n,
        [{}] + [one] * n,
        {
            (j, i): {(TERMINAL_CELL, TERMINAL_CELL): TERMINAL_CELL}
            for j in range(1, n + 1)
            for i in range(j)
        },
    )


def to_terminal(category: NCat, one: NCat | None = None) -> NFunctor:
    """The unique n-functor from ``category`` to the terminal n-category."""
    one = terminal(category.n) if one is None else one
    return NFunctor(
        dom=category,
        cod=one,
        maps=tuple({cell: TERMINAL_CELL for cell in level} for level in category.cells),
    )


def _same(a: NCat, b: NCat) -> bool:
    return a is b or a == b


def pullback(f: NFunctor, g: NFunctor) -> Pullback:
    """Pullback of the cospan ``f: A -> X <- B: g``.

    Returns:
        The apex ``P`` with ``P.cells[l] = {(a|b) : f(a) = g(b)}`` and its projections.

    Raises:
        DimensionMismatchError: If the three n-categories have different dimensions.
        CodomainMismatchError: If ``f`` and ``g`` have different codomains.
    """
    if not f.dom.n == g.dom.n == f.cod.n == g.cod.n:
        raise DimensionMismatchError("pullback legs must have the same dimension")
    if not _same(f.cod, g.cod):
        raise CodomainMismatchError("pullback legs must share a codomain")
    a, b, n = f.dom, g.dom, f.dom.n

    pairs: list[list[tuple[str, str]]] = []
    for level in range(n + 1):
        fibre: dict[str, list[str]] = defaultdict(list)
        for cell in b.cells[level]:
            fibre[g.maps[level][cell]].append(cell)
        pairs.append(
            [(x, y) for x in a.cells[level] for y in fibre.get(f.maps[level][x], ())]
        )

    src: list[dict[str, str]] = [{}]
    tgt: list[dict[str, str]] = [{}]
    idn: list[dict[str, str]] = [{}]
    for level in range(1, n + 1):
        here, below = pairs[level], pairs[level - 1]
        a_src, b_src = a.src[level], b.src[level]
        a_tgt, b_tgt = a.tgt[level], b.tgt[level]
        a_idn, b_idn = a.idn[level], b.idn[level]
        src.append({pair_name(x, y): pair_name(a_src[x], b_src[y]) for x, y in here})
        tgt.append({pair_name(x, y): pair_name(a_tgt[x], b_tgt[y]) for x, y in here})
        idn.append({pair_name(x, y): pair_name(a_idn[x], b_idn[y]) for x, y in below})

    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for (j, i), table_b in b.comp.items():
        by_image: dict[tuple[str, str], list[tuple[str, str, str]]] = defaultdict(list)
        for (later, earlier), result in table_b.items():
            key = (g.maps[j][later], g.maps[j][earlier])
            by_image[key].append((later, earlier, result))
        table: dict[tuple[str, str], str] = {}
        for (later, earlier), result in a.comp.get((j, i), {}).items():
            key = (f.maps[j][later], f.maps[j][earlier])
            for later_b, earlier_b, result_b in by_image.get(key, ()):
                table[(pair_name(later, later_b), pair_name(earlier, earlier_b))] = pair_name(
                    result, result_b
                )
        comp[(j, i)] = table

    apex = make_ncat(
        n, [[pair_name(x, y) for x, y in level] for level in pairs], src, tgt, idn, comp
    )
    p1 = NFunctor(apex, a, tuple({pair_name(x, y): x for x, y in level} for level in pairs))
    p2 = NFunctor(apex, b, tuple({pair_name(x, y): y for x, y in level} for level in pairs))
    logger.debug(f"pullback apex has {apex.cells_count()} cells per level")
    return Pullback(apex, p1, p2)


def product(a: NCat, b: NCat) -> Pullback:
    """Binary product, as the pullback over the terminal n-category.

    Raises:
        DimensionMismatchError: If ``a`` and ``b`` have different dimensions.
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"cannot multiply a {a.n}-category by a {b.n}-category")
    one = terminal(a.n)
    return pullback(to_terminal(a, one), to_terminal(b, one))


def pullback_pair(u: NFunctor, v: NFunctor, target: Pullback) -> NFunctor:
    """Mediating functor ``Z -> P`` determined by legs ``u: Z -> A`` and ``v: Z -> B``.

    Raises:
        ValueError: If the legs do not form a cone over the cospan of ``target``.
    """
    maps = []
    for level in range(u.dom.n + 1):
        table = {}
        for cell in u.dom.cells[level]:
            image = pair_name(u.maps[level][cell], v.maps[level][cell])
            if image not in target.apex.cell_sets[level]:
                raise ValueError(f"legs do not commute at cell {cell} (level {level})")
            table[cell] = image
        maps.append(table)
    return NFunctor(dom=u.dom, cod=target.apex, maps=tuple(maps))


def pair(u: NFunctor, v: NFunctor, target: Pullback) -> NFunctor:
    """Mediating functor into a product; see ``pullback_pair``."""
    return pullback_pair(u, v, target)


def verify_pullback_universal(
    f: NFunctor, g: NFunctor, target: Pullback, leg_a: NFunctor, leg_b: NFunctor
) -> bool:
    """Whether exactly one functor mediates the cone ``(leg_a, leg_b)`` into ``target``.

    The search is exhaustive over functors from the cone's apex into the pullback.
    """
    if not _same(leg_a.dom, leg_b.dom):
        return False
    for level in range(leg_a.dom.n + 1):
        for cell in leg_a.dom.cells[level]:
            if f.maps[level][leg_a.maps[level][cell]] != g.maps[level][leg_b.maps[level][cell]]:
                return False
    p1, p2 = target.p1, target.p2

    def over_legs(level: int, cell: str, image: str) -> bool:
        return (
            p1.maps[level][image] == leg_a.maps[level][cell]
            and p2.maps[level][image] == leg_b.maps[level][cell]
        )

    found = 0
    for _ in iter_functors(leg_a.dom, target.apex, allowed=over_legs):
        found += 1
        if found > 1:
            break
    return found == 1


def _tagger(tag: str) -> Callable[[str], str]:
    return lambda cell: tagged_name(tag, cell)


def coproduct(parts: Sequence[NCat], tags: Sequence[str] | None = None) -> Coproduct:
    """Disjoint union of n-categories.

    Args:
        parts: Summands, all of the same dimension.
        tags: Optional summand tags; cell ``c`` of summand k becomes ``"{tag}:{c}"``.
            Defaults to the summand index.

    Raises:
        DimensionMismatchError: If the summands have different dimensions.
        ValueError: If ``parts`` is empty, tags repeat or a tag contains ``:``.
    """
    if not parts:
        raise ValueError("coproduct needs at least one summand")
    n = parts[0].n
    if any(part.n != n for part in parts):
        raise DimensionMismatchError("coproduct summands must have the same dimension")
    labels = [str(k) for k in range(len(parts))] if tags is None else list(tags)
    if len(labels) != len(parts) or len(set(labels)) != len(labels):
        raise ValueError("coproduct tags must be distinct, one per summand")
    for label in labels:
        if ":" in label or not is_plain_cell_name(label):
            raise ValueError(f"coproduct tag {label!r} must be plain and must not contain ':'")

    cells: list[list[str]] = [[] for _ in range(n + 1)]
    src: list[dict[str, str]] = [{} for _ in range(n + 1)]
    tgt: list[dict[str, str]] = [{} for _ in range(n + 1)]
    idn: list[dict[str, str]] = [{} for _ in range(n + 1)]
    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = defaultdict(dict)
    for tag, part in zip(labels, parts):
        t = _tagger(tag)
        for level in range(n + 1):
            cells[level].extend(t(c) for c in part.cells[level])
        for level in range(1, n + 1):
            src[level].update({t(c): t(d) for c, d in part.src[level].items()})
            tgt[level].update({t(c): t(d) for c, d in part.tgt[level].items()})
            idn[level].update({t(c): t(d) for c, d in part.idn[level].items()})
        for key, table in part.comp.items():
            comp[key].update({(t(x), t(y)): t(r) for (x, y), r in table.items()})

    apex = make_ncat(n, cells, src, tgt, idn, comp)
    injections = tuple(
        NFunctor(
            dom=part,
            cod=apex,
            maps=tuple({c: tagged_name(tag, c) for c in level} for level in part.cells),
        )
        for tag, part in zip(labels, parts)
    )
    return Coproduct(apex, injections)


def connected_components(category: NCat) -> list[set[str]]:
    """Objects grouped by connectedness through 1-cells, sorted by least member."""
    graph = nx.Graph()
    graph.add_nodes_from(category.cells[0])
    for cell in category.cells[1]:
        graph.add_edge(category.src[1][cell], category.tgt[1][cell])
    return sorted((set(c) for c in nx.connected_components(graph)), key=min)


def is_set_pullback(
    xs: Iterable[Hashable],
    ys: Iterable[Hashable],
    zs: Iterable[Hashable],
    p: Mapping[Hashable, Hashable],
    q: Mapping[Hashable, Hashable],
    r: Mapping[Hashable, Hashable],
    s: Mapping[Hashable, Hashable],
) -> bool:
    """Whether the square ``X -p-> Y -r-> W``, ``X -q-> Z -s-> W`` is a pullback of sets."""
    comparison: dict[tuple[Hashable, Hashable], Hashable] = {}
    for x in xs:
        if r[p[x]] != s[q[x]]:
            return False
        key = (p[x], q[x])
        if key in comparison:
            return False
        comparison[key] = x
    by_image: dict[Hashable, int] = defaultdict(int)
    for z in zs:
        by_image[s[z]] += 1
    expected = sum(by_image.get(r[y], 0) for y in ys)
    return expected == len(comparison)
