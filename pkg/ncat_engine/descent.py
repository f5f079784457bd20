"""Effective-descent sufficiency, the canonical descent cover and reflection properties.

A functor ``p: E -> B`` is shown to be an effective descent morphism by
checking that every configuration of n-cells in B (a triple of composable
pairs, along two different levels) lifts to E. ``build_edm`` produces such a
cover with E an n-preorder, one summand per configuration.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from enum import IntEnum, auto
from itertools import combinations

import networkx as nx

from ncat_engine.factor import reflective_factorize
from ncat_engine.limits import coproduct, pullback, pullback_pair, tagged_name
from ncat_engine.ncat import (
    NCat,
    NFunctor,
    generated_subcategory,
    is_bijective,
    make_ncat,
    truncate,
)
from ncat_engine.reflect import induced, is_npreorder, reflect
from ncat_engine.search import ensure_within_limit, find_isomorphism, iter_functors
from ncat_engine.shapes import chain, config_shape, linear_cell
from ncat_engine.validator import check_functor

logger = logging.getLogger(__name__)

Relation = frozenset[tuple[str, str]]


class ClosureError(Exception):
    """Raised when closure generators are not parallel pairs of top skeleton cells."""

    pass


class PreconditionError(Exception):
    """Raised when a reflection-property instance does not have the required shape."""

    pass


class ConfigKind(IntEnum):
    """Shape of a configuration of n-cells."""

    VERTICAL = auto()  # triple along j of pairs along i
    HORIZONTAL = auto()  # triple along i of pairs along j
    ARROWS = auto()  # composable triple of arrows (n = 1)


@dataclass(frozen=True, order=True)
class ComposableConfig:
    """A 3x2 grid of n-cells, ``cells[t][p]``.

    ``p`` runs along the pair and ``t`` along the triple; index 0 is applied
    first. For ``ARROWS`` each row holds a single 1-cell and ``i = j = 0``.
    """

    kind: ConfigKind
    j: int
    i: int
    cells: tuple[tuple[str, ...], ...]

    @property
    def pair_level(self) -> int:
        return self.j if self.kind == ConfigKind.HORIZONTAL else self.i

    @property
    def triple_level(self) -> int:
        return self.i if self.kind == ConfigKind.HORIZONTAL else self.j

    def flat(self) -> list[str]:
        return [cell for row in self.cells for cell in row]

    def __str__(self) -> str:
        rows = "; ".join(", ".join(row) for row in self.cells)
        return f"{self.kind.name.lower()} j={self.j} i={self.i} [{rows}]"


@dataclass(frozen=True)
class EdmVerdict:
    """Outcome of the sufficiency check; truthy when every configuration lifts."""

    sufficient: bool
    missing: ComposableConfig | None = None

    def __bool__(self) -> bool:
        return self.sufficient


def _successors(table: dict[tuple[str, str], str]) -> dict[str, list[str]]:
    after: dict[str, list[str]] = defaultdict(list)
    for later, earlier in table:
        after[earlier].append(later)
    return {cell: sorted(cells) for cell, cells in after.items()}


def composable_triples(category: NCat) -> list[ComposableConfig]:
    """Composable triples of top cells along the level just below, for ``n = 1``."""
    n = category.n
    after = _successors(category.comp.get((n, n - 1), {}))
    found = []
    for x1 in category.cells[n]:
        for x2 in after.get(x1, ()):
            for x3 in after.get(x2, ()):
                found.append(ComposableConfig(ConfigKind.ARROWS, 0, 0, ((x1,), (x2,), (x3,))))
    return found


def _grid_configs(category: NCat, kind: ConfigKind, j: int, i: int) -> Iterator[ComposableConfig]:
    n = category.n
    pair_level, triple_level = (j, i) if kind == ConfigKind.HORIZONTAL else (i, j)
    pairs = category.comp.get((n, pair_level), {})
    next_in_triple = _successors(category.comp.get((n, triple_level), {}))
    for later0, earlier0 in sorted(pairs, key=lambda key: (key[1], key[0])):
        for earlier1 in next_in_triple.get(earlier0, ()):
            for later1 in next_in_triple.get(later0, ()):
                if (later1, earlier1) not in pairs:
                    continue
                for earlier2 in next_in_triple.get(earlier1, ()):
                    for later2 in next_in_triple.get(later1, ()):
                        if (later2, earlier2) in pairs:
                            yield ComposableConfig(
                                kind,
                                j,
                                i,
                                ((earlier0, later0), (earlier1, later1), (earlier2, later2)),
                            )


def configurations(category: NCat) -> list[ComposableConfig]:
    """Every configuration of n-cells, ordered by kind, levels and cell names."""
    n = category.n
    if n == 1:
        return composable_triples(category)
    found: list[ComposableConfig] = []
    for kind in (ConfigKind.VERTICAL, ConfigKind.HORIZONTAL):
        for j in range(1, n):
            for i in range(j):
                found.extend(sorted(_grid_configs(category, kind, j, i)))
    return found


def _lift(
    f: NFunctor, config: ComposableConfig, fibre: dict[str, list[str]]
) -> ComposableConfig | None:
    a, n = f.dom, f.n
    if config.kind == ConfigKind.ARROWS:
        pair_table: dict[tuple[str, str], str] = {}
        triple_table = a.comp.get((n, n - 1), {})
    else:
        pair_table = a.comp.get((n, config.pair_level), {})
        triple_table = a.comp.get((n, config.triple_level), {})
    width = len(config.cells[0])
    slots = [(t, p) for t in range(3) for p in range(width)]
    chosen: dict[tuple[int, int], str] = {}

    def fits(t: int, p: int, cell: str) -> bool:
        if p == 1 and (cell, chosen[(t, 0)]) not in pair_table:
            return False
        return t == 0 or (cell, chosen[(t - 1, p)]) in triple_table

    def search(k: int) -> bool:
        if k == len(slots):
            return True
        t, p = slots[k]
        for cell in fibre.get(config.cells[t][p], ()):
            if fits(t, p, cell):
                chosen[(t, p)] = cell
                if search(k + 1):
                    return True
        chosen.pop((t, p), None)
        return False

    if not search(0):
        return None
    cells = tuple(tuple(chosen[(t, p)] for p in range(width)) for t in range(3))
    return ComposableConfig(config.kind, config.j, config.i, cells)


def is_edm_sufficient(f: NFunctor) -> EdmVerdict:
    """Whether every configuration of the codomain is the image of one in the domain.

    A false verdict only means the sufficient condition fails; it does not show
    that ``f`` is not an effective descent morphism.

    Returns:
        The verdict, with the first configuration (in enumeration order) that does not lift.
    """
    fibre: dict[str, list[str]] = defaultdict(list)
    for cell in f.dom.cells[f.n]:
        fibre[f.maps[f.n][cell]].append(cell)
    for config in configurations(f.cod):
        if _lift(f, config, fibre) is None:
            logger.debug(f"configuration does not lift: {config}")
            return EdmVerdict(False, config)
    return EdmVerdict(True)


def _check_generators(skeleton: NCat, generators: Iterable[tuple[str, str]]) -> Relation:
    top = skeleton.n
    pairs = frozenset(generators)
    for h, h2 in sorted(pairs):
        if not skeleton.has_cell(top, h) or not skeleton.has_cell(top, h2):
            raise ClosureError(f"generator ({h}, {h2}) names a cell outside level {top}")
        if skeleton.src[top][h] != skeleton.src[top][h2] or (
            skeleton.tgt[top][h] != skeleton.tgt[top][h2]
        ):
            raise ClosureError(f"generator ({h}, {h2}) is not a pair of parallel cells")
    return pairs


def _whiskerings(skeleton: NCat, relation: Relation) -> set[tuple[str, str]]:
    top = skeleton.n
    found: set[tuple[str, str]] = set()
    for i in range(top):
        table = skeleton.comp.get((top, i), {})
        for g, g2 in relation:
            for h, h2 in relation:
                if (g, h) in table and (g2, h2) in table:
                    found.add((table[(g, h)], table[(g2, h2)]))
    return found


def _is_closed(skeleton: NCat, relation: Relation) -> bool:
    by_start: dict[str, set[str]] = defaultdict(set)
    for h, h2 in relation:
        by_start[h].add(h2)
    for h, h2 in relation:
        if not by_start[h2] <= by_start[h]:
            return False
    return _whiskerings(skeleton, relation) <= relation


def closure_relation(skeleton: NCat, generators: Iterable[tuple[str, str]]) -> Relation:
    """Least reflexive, transitive relation containing ``generators`` and closed under whiskering.

    Raises:
        ClosureError: If a generator is not a pair of parallel top cells.
    """
    top = skeleton.n
    relation = set(_check_generators(skeleton, generators))
    relation.update((h, h) for h in skeleton.cells[top])
    rounds = 0
    while True:
        rounds += 1
        graph = nx.DiGraph()
        graph.add_nodes_from(skeleton.cells[top])
        graph.add_edges_from(relation)
        closed = set(nx.transitive_closure(graph, reflexive=True).edges())
        closed |= _whiskerings(skeleton, frozenset(closed))
        if closed == relation:
            break
        relation = closed
    logger.debug(f"closure reached {len(relation)} relation cells after {rounds} rounds")
    return frozenset(relation)


def relation_cell(h: str, h2: str) -> str:
    return f"[{h}<={h2}]"


def relation_category(skeleton: NCat, relation: Relation) -> NCat:
    """The n-preorder over ``skeleton`` with one top cell per related pair."""
    top = skeleton.n
    n = top + 1
    ordered = sorted(relation)
    names = [relation_cell(h, h2) for h, h2 in ordered]
    by_start: dict[str, list[str]] = defaultdict(list)
    for h, h2 in ordered:
        by_start[h].append(h2)

    comp = dict(skeleton.comp)
    comp[(n, top)] = {
        (relation_cell(h2, h3), relation_cell(h1, h2)): relation_cell(h1, h3)
        for h1, h2 in ordered
        for h3 in by_start[h2]
    }
    for i in range(top):
        table = skeleton.comp.get((top, i), {})
        comp[(n, i)] = {
            (relation_cell(g, g2), relation_cell(h, h2)): relation_cell(
                table[(g, h)], table[(g2, h2)]
            )
            for g, g2 in ordered
            for h, h2 in ordered
            if (g, h) in table
        }
    return make_ncat(
        n,
        list(skeleton.cells) + [names],
        list(skeleton.src) + [{relation_cell(h, h2): h for h, h2 in ordered}],
        list(skeleton.tgt) + [{relation_cell(h, h2): h2 for h, h2 in ordered}],
        list(skeleton.idn) + [{h: relation_cell(h, h) for h in skeleton.cells[top]}],
        comp,
    )


def preorder_closure(skeleton: NCat, generators: Iterable[tuple[str, str]]) -> NCat:
    """Smallest n-preorder over an (n-1)-category relating every generator pair.

    Args:
        skeleton: A valid (n-1)-category; its levels are kept unchanged.
        generators: Ordered pairs ``(h, h')`` of parallel top cells of ``skeleton``.

    Returns:
        The n-preorder whose top cells ``[h<=h']`` are the closed relation.

    Raises:
        ClosureError: If a generator is not a pair of parallel top cells.
    """
    return relation_category(skeleton, closure_relation(skeleton, generators))


def preorder_closure_oracle(
    skeleton: NCat, generators: Iterable[tuple[str, str]], max_pairs: int = 5
) -> Relation:
    """Intersection of every closed relation containing the generators, by brute force.

    Only pairs that are neither reflexive nor generators are optional, and there
    may be at most ``max_pairs`` of them.

    Raises:
        ClosureError: If a generator is not a pair of parallel top cells.
        ValueError: If there are too many optional pairs to enumerate.
    """
    top = skeleton.n
    required = set(_check_generators(skeleton, generators))
    required.update((h, h) for h in skeleton.cells[top])
    optional = [
        (h, h2)
        for h in skeleton.cells[top]
        for h2 in skeleton.cells[top]
        if (h, h2) not in required
        and skeleton.src[top][h] == skeleton.src[top][h2]
        and skeleton.tgt[top][h] == skeleton.tgt[top][h2]
    ]
    if len(optional) > max_pairs:
        raise ValueError(f"{len(optional)} optional pairs exceed the oracle limit of {max_pairs}")
    result: set[tuple[str, str]] | None = None
    for size in range(len(optional) + 1):
        for extra in combinations(optional, size):
            candidate = frozenset(required.union(extra))
            if _is_closed(skeleton, candidate):
                result = set(candidate) if result is None else result & candidate
    assert result is not None  # every parallel pair together is always closed
    return frozenset(result)


@dataclass(frozen=True)
class EdmCover:
    """The cover ``p: E -> B`` with one summand per configuration of B."""

    total: NCat
    projection: NFunctor
    configs: tuple[ComposableConfig, ...]
    fallbacks: int = 0


def _closure_summand(category: NCat, config: ComposableConfig) -> NFunctor | None:
    n = category.n
    seeds: list[list[str]] = [[] for _ in range(n)] + [config.flat()]
    sub, _ = generated_subcategory(category, seeds)
    if not is_npreorder(sub):
        return None
    skeleton = truncate(sub, n - 1)
    generators = {(category.src[n][c], category.tgt[n][c]) for c in config.flat()}
    summand = preorder_closure(skeleton, generators)
    top = {
        relation_cell(h, h2): sub.hom(h, h2)[0]
        for h, h2 in (
            (summand.src[n][cell], summand.tgt[n][cell]) for cell in summand.cells[n]
        )
        if sub.hom(h, h2)
    }
    if len(top) != len(summand.cells[n]):
        return None
    maps = tuple({c: c for c in level} for level in skeleton.cells) + (top,)
    projection = NFunctor(dom=summand, cod=category, maps=maps)
    if check_functor(projection) is not None:
        return None
    return projection


def _shape_summand(category: NCat, config: ComposableConfig) -> NFunctor:
    n = category.n
    if config.kind == ConfigKind.ARROWS:
        shape = chain(3)
        names = [[linear_cell(t, t + 1, ("*",))] for t in range(3)]
    else:
        shape, names = config_shape(config.kind == ConfigKind.VERTICAL, n, config.j, config.i)
    pins = {names[t][p]: config.cells[t][p] for t in range(3) for p in range(len(names[t]))}
    fixed: list[dict[str, str]] = [{} for _ in range(n)] + [pins]
    for projection in iter_functors(shape, category, fixed=fixed, enforce_limit=False):
        return projection
    raise AssertionError(f"free configuration shape does not map onto {config}")


def build_edm(category: NCat) -> EdmCover:
    """Cover ``category`` by a coproduct of n-preorders, one per configuration.

    Each summand is the closure over the configuration's own sub-skeleton when
    the configuration spans an n-preorder in ``category``, and the free
    configuration shape otherwise. For ``n = 1`` every summand is the chain
    ``[3]``.

    Raises:
        EnumerationLimitError: If ``category`` exceeds the cell cap.
    """
    ensure_within_limit(category)
    configs = configurations(category)
    pieces: list[NFunctor] = []
    fallbacks = 0
    for config in configs:
        piece = None if category.n == 1 else _closure_summand(category, config)
        if piece is None:
            if category.n > 1:
                fallbacks += 1
                logger.debug(f"using the free shape for {config}")
            piece = _shape_summand(category, config)
        pieces.append(piece)

    if not pieces:
        empty = make_ncat(
            category.n,
            [[] for _ in range(category.n + 1)],
            [{} for _ in range(category.n + 1)],
            [{} for _ in range(category.n + 1)],
            [{} for _ in range(category.n + 1)],
            {},
        )
        maps = tuple({} for _ in range(category.n + 1))
        return EdmCover(empty, NFunctor(dom=empty, cod=category, maps=maps), ())

    tags = [f"s{k}" for k in range(len(pieces))]
    total = coproduct([piece.dom for piece in pieces], tags).apex
    maps = tuple(
        {
            tagged_name(tag, cell): image
            for tag, piece in zip(tags, pieces)
            for cell, image in piece.maps[level].items()
        }
        for level in range(category.n + 1)
    )
    if fallbacks:
        logger.warning(f"{fallbacks} of {len(configs)} configurations needed the free shape")
    projection = NFunctor(dom=total, cod=category, maps=maps)
    return EdmCover(total, projection, tuple(configs), fallbacks)


class ReflectionProperty(IntEnum):
    """Properties of the reflection checked on concrete instances."""

    STABLE_UNITS = auto()
    SEMI_LEFT_EXACT = auto()
    SIMPLE = auto()


@dataclass(frozen=True)
class StableUnitsInstance:
    """A cospan ``f: A -> X <- B: g`` with X an n-preorder."""

    f: NFunctor
    g: NFunctor


@dataclass(frozen=True)
class SemiLeftExactInstance:
    """The unit of ``a`` pulled back along ``phi: S -> I(a)`` with S an n-preorder."""

    a: NCat
    s: NCat
    phi: NFunctor


@dataclass(frozen=True)
class SimpleInstance:
    """The comparison of ``f`` with the pullback of ``I f`` along the unit of its codomain."""

    f: NFunctor


ReflectionInstance = StableUnitsInstance | SemiLeftExactInstance | SimpleInstance


def _stable_units_hold(instance: StableUnitsInstance) -> bool:
    f, g = instance.f, instance.g
    if f.cod != g.cod:
        raise PreconditionError("the cospan legs must share a codomain")
    if not is_npreorder(f.cod):
        raise PreconditionError("the cospan vertex must be an n-preorder")
    square = pullback(f, g)
    source = reflect(square.apex)
    image_a, image_b, image_x = reflect(f.dom), reflect(g.dom), reflect(f.cod)
    reflected_square = pullback(induced(f, image_a, image_x), induced(g, image_b, image_x))
    witness = find_isomorphism(source.image, reflected_square.apex)
    comparison = pullback_pair(
        induced(square.p1, source, image_a),
        induced(square.p2, source, image_b),
        reflected_square,
    )
    if witness is not None and not is_bijective(comparison):
        logger.info("reflected pullback is isomorphic but the canonical comparison is not")
    return witness is not None


def _semi_left_exact_holds(instance: SemiLeftExactInstance) -> bool:
    if not is_npreorder(instance.s):
        raise PreconditionError("the pulled back object must be an n-preorder")
    unit = reflect(instance.a)
    if instance.phi.dom != instance.s or instance.phi.cod != unit.image:
        raise PreconditionError("phi must map the n-preorder into the reflection of a")
    square = pullback(unit.unit, instance.phi)
    return is_bijective(induced(square.p2))


def _simple_holds(instance: SimpleInstance) -> bool:
    return is_bijective(induced(reflective_factorize(instance.f).e))


def verify_reflection_property(kind: ReflectionProperty, instance: ReflectionInstance) -> bool:
    """Check one instance of a property of the reflection.

    Args:
        kind: Which property the instance is for.
        instance: Data matching ``kind``.

    Returns:
        Whether the instance satisfies the property.

    Raises:
        PreconditionError: If the instance does not match ``kind`` or its preconditions fail.
    """
    match kind, instance:
        case ReflectionProperty.STABLE_UNITS, StableUnitsInstance():
            return _stable_units_hold(instance)
        case ReflectionProperty.SEMI_LEFT_EXACT, SemiLeftExactInstance():
            return _semi_left_exact_holds(instance)
        case ReflectionProperty.SIMPLE, SimpleInstance():
            return _simple_holds(instance)
    raise PreconditionError(f"{type(instance).__name__} is not an instance of {kind.name}")
