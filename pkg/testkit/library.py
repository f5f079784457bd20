"""Seed library of small, known-valid n-categories."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from itertools import combinations

import networkx as nx

from ncat_engine.limits import terminal
from ncat_engine.ncat import NCat, make_ncat
from ncat_engine.shapes import chain, globe, parallel_cells, suspension

UNIT_ELEMENT = "1"


def discrete(objects: Sequence[str]) -> NCat:
    """The 1-category with the given objects and only identity arrows."""
    arrows = {a: f"1_{a}" for a in objects}
    return make_ncat(
        1,
        [list(objects), list(arrows.values())],
        [{}, {f: a for a, f in arrows.items()}],
        [{}, {f: a for a, f in arrows.items()}],
        [{}, arrows],
        {(1, 0): {(f, f): f for f in arrows.values()}},
    )


def poset(objects: Sequence[str], covers: Sequence[tuple[str, str]]) -> NCat:
    """The 1-category of the partial order generated by ``covers`` (pairs ``a < b``).

    Raises:
        ValueError: If the covers contain a cycle.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(objects)
    graph.add_edges_from(covers)
    if not nx.is_directed_acyclic_graph(graph):
        raise ValueError("poset covers must not contain a cycle")
    order = nx.transitive_closure_dag(graph)
    related = sorted(set(order.edges()) | {(a, a) for a in objects})

    def arrow(a: str, b: str) -> str:
        return f"{a}<{b}" if a != b else f"1_{a}"

    after: dict[str, list[str]] = {a: [] for a in objects}
    for a, b in related:
        after[a].append(b)
    return make_ncat(
        1,
        [list(objects), [arrow(a, b) for a, b in related]],
        [{}, {arrow(a, b): a for a, b in related}],
        [{}, {arrow(a, b): b for a, b in related}],
        [{}, {a: arrow(a, a) for a in objects}],
        {
            (1, 0): {
                (arrow(b, c), arrow(a, b)): arrow(a, c)
                for a, b in related
                for c in after[b]
            }
        },
    )


def monoid(elements: Sequence[str], table: Mapping[tuple[str, str], str]) -> NCat:
    """The one-object 1-category of a finite monoid.

    Args:
        elements: Non-unit elements.
        table: ``table[(x, y)] = x * y`` (y applied first) for non-unit x, y.
    """
    members = [UNIT_ELEMENT] + list(elements)
    comp: dict[tuple[str, str], str] = {}
    for x in members:
        for y in members:
            if x == UNIT_ELEMENT:
                comp[(x, y)] = y
            elif y == UNIT_ELEMENT:
                comp[(x, y)] = x
            else:
                comp[(x, y)] = table[(x, y)]
    point = {m: "0" for m in members}
    return make_ncat(
        1,
        [["0"], members],
        [{}, point],
        [{}, dict(point)],
        [{}, {"0": UNIT_ELEMENT}],
        {(1, 0): comp},
    )


def idempotent() -> NCat:
    """One object and one non-identity arrow ``e`` with ``e ∘ e = e``."""
    return monoid(["e"], {("e", "e"): "e"})


def cyclic_two() -> NCat:
    """One object and an involution ``s``."""
    return monoid(["s"], {("s", "s"): UNIT_ELEMENT})


def walking_arrow() -> NCat:
    return chain(1)


def parallel_pair() -> NCat:
    """Two objects and two parallel non-identity arrows."""
    return parallel_cells(1, 2)


def endo_two_cell() -> NCat:
    """A 2-category with a non-identity idempotent endo-2-cell on a 1-cell."""
    return suspension(idempotent())


def seed_library(n: int) -> dict[str, NCat]:
    """Named seed n-categories of dimension ``n``."""
    seeds: dict[str, NCat] = {"terminal": terminal(n)}
    if n == 1:
        seeds.update(
            {
                "discrete-2": discrete(["a", "b"]),
                "walking-arrow": walking_arrow(),
                "chain-2": chain(2),
                "parallel-pair": parallel_pair(),
                "idempotent": idempotent(),
                "involution": cyclic_two(),
                "span": poset(["a", "b", "c"], [("a", "b"), ("a", "c")]),
            }
        )
        return seeds
    seeds.update(
        {
            "globe": globe(n),
            "empty-hom": parallel_cells(n, 0),
            "two-parallel": parallel_cells(n, 2),
        }
    )
    for name, lower in seed_library(n - 1).items():
        if name != "terminal" and lower.cells_count()[0] <= 2:
            seeds[f"suspended-{name}"] = suspension(lower)
    return seeds


def parallel_pairs(category: NCat) -> list[tuple[str, str]]:
    """Ordered pairs of distinct parallel top cells."""
    n = category.n
    found = []
    for h, h2 in combinations(category.cells[n], 2):
        if category.src[n][h] == category.src[n][h2] and (
            category.tgt[n][h] == category.tgt[n][h2]
        ):
            found.extend([(h, h2), (h2, h)])
    return sorted(found)
