"""Small n-categories built from linear pasting shapes.

``linear(r, H)`` has objects ``0..r``; a cell of ``Hom(a, b)`` is a tuple of
``b - a`` cells of ``H`` named ``"a:b[c1;c2;...]"``, and composition along
objects concatenates tuples. Suspensions, globes, chains and the free
configuration shapes used by the descent module are all instances.
"""

from __future__ import annotations

from collections.abc import Sequence
from itertools import product

from ncat_engine.ncat import NCat, make_ncat

POINT_CELL = "*"


def linear_cell(a: int, b: int, components: Sequence[str]) -> str:
    """Name of the cell of ``Hom(a, b)`` with the given components."""
    return f"{a}:{b}[{';'.join(components)}]"


def linear(r: int, hom: NCat | None = None) -> NCat:
    """The (m+1)-category with objects ``0..r`` and ``Hom(a, b) = hom^(b - a)``.

    Args:
        r: Index of the last object, at least 0.
        hom: An m-category, or None for the point (then the result is the chain ``[r]``).

    Returns:
        An n-category with ``n = m + 1``.
    """
    m = 0 if hom is None else hom.n
    hom_cells: Sequence[Sequence[str]] = ((POINT_CELL,),) if hom is None else hom.cells
    n = m + 1
    spans = [(a, b) for a in range(r + 1) for b in range(a, r + 1)]

    cells: list[list[str]] = [[str(a) for a in range(r + 1)]]
    members: list[list[tuple[int, int, tuple[str, ...]]]] = [[]]
    for level in range(1, n + 1):
        here = [
            (a, b, comps)
            for a, b in spans
            for comps in product(hom_cells[level - 1], repeat=b - a)
        ]
        members.append(here)
        cells.append([linear_cell(a, b, comps) for a, b, comps in here])

    src: list[dict[str, str]] = [{}]
    tgt: list[dict[str, str]] = [{}]
    idn: list[dict[str, str]] = [{}]
    for level in range(1, n + 1):
        level_src, level_tgt = {}, {}
        for a, b, comps in members[level]:
            name = linear_cell(a, b, comps)
            if level == 1:
                level_src[name], level_tgt[name] = str(a), str(b)
            else:
                assert hom is not None
                level_src[name] = linear_cell(a, b, [hom.src[level - 1][c] for c in comps])
                level_tgt[name] = linear_cell(a, b, [hom.tgt[level - 1][c] for c in comps])
        src.append(level_src)
        tgt.append(level_tgt)
        if level == 1:
            idn.append({str(a): linear_cell(a, a, ()) for a in range(r + 1)})
        else:
            assert hom is not None
            idn.append(
                {
                    linear_cell(a, b, comps): linear_cell(
                        a, b, [hom.idn[level - 1][c] for c in comps]
                    )
                    for a, b, comps in members[level - 1]
                }
            )

    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for level in range(1, n + 1):
        by_start: dict[int, list[tuple[int, int, tuple[str, ...]]]] = {}
        for member in members[level]:
            by_start.setdefault(member[0], []).append(member)
        along_objects: dict[tuple[str, str], str] = {}
        for a, b, xs in members[level]:
            for _, c, ys in by_start.get(b, ()):
                along_objects[(linear_cell(b, c, ys), linear_cell(a, b, xs))] = linear_cell(
                    a, c, xs + ys
                )
        comp[(level, 0)] = along_objects
        for i in range(1, level):
            assert hom is not None
            entries = list(hom.comp.get((level - 1, i - 1), {}).items())
            table: dict[tuple[str, str], str] = {}
            for a, b in spans:
                for choice in product(entries, repeat=b - a):
                    later = [pair[0] for pair, _ in choice]
                    earlier = [pair[1] for pair, _ in choice]
                    results = [result for _, result in choice]
                    table[(linear_cell(a, b, later), linear_cell(a, b, earlier))] = (
                        linear_cell(a, b, results)
                    )
            comp[(level, i)] = table

    return make_ncat(n, cells, src, tgt, idn, comp)


def suspension(category: NCat | None) -> NCat:
    """Two objects with ``category`` as the only non-trivial hom."""
    return linear(1, category)


def chain(r: int) -> NCat:
    """The poset ``0 < 1 < ... < r`` as a 1-category."""
    return linear(r, None)


def _globe_or_point(d: int) -> NCat | None:
    shape: NCat | None = None
    for _ in range(d):
        shape = suspension(shape)
    return shape


def globe(d: int) -> NCat:
    """The walking d-cell (d >= 1)."""
    if d < 1:
        raise ValueError("globes start at dimension 1")
    shape = _globe_or_point(d)
    assert shape is not None
    return shape


def globe_top(d: int) -> str:
    """Name of the generating top cell of ``globe(d)``; the point's cell when d = 0."""
    name = POINT_CELL
    for _ in range(d):
        name = linear_cell(0, 1, (name,))
    return name


def parallel_cells(n: int, count: int) -> NCat:
    """The walking n-cell with its top cell replaced by ``count`` parallel copies.

    Copies are named ``theta1``, ``theta2``, ...; ``count = 0`` leaves only the
    boundary, e.g. the parallel pair of 1-cells when ``n = 2``.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    base = globe(n)
    top = globe_top(n)
    copies = [f"theta{k}" for k in range(1, count + 1)]

    def spread(cell: str) -> list[str]:
        return copies if cell == top else [cell]

    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for (j, i), table in base.comp.items():
        if j < n:
            comp[(j, i)] = dict(table)
            continue
        spread_table: dict[tuple[str, str], str] = {}
        for (later, earlier), result in table.items():
            if top not in (later, earlier):
                spread_table[(later, earlier)] = result
                continue
            for copy in copies:
                pair = (copy if later == top else later, copy if earlier == top else earlier)
                spread_table[pair] = copy if result == top else result
        comp[(j, i)] = spread_table

    top_cells = [c for cell in base.cells[n] for c in spread(cell)]
    src = list(base.src)
    tgt = list(base.tgt)
    src[n] = {c: base.src[n][cell] for cell in base.cells[n] for c in spread(cell)}
    tgt[n] = {c: base.tgt[n][cell] for cell in base.cells[n] for c in spread(cell)}
    return make_ncat(n, list(base.cells[:n]) + [top_cells], src, tgt, list(base.idn), comp)


def _suspend(shape: NCat, times: int) -> NCat:
    for _ in range(times):
        shape = suspension(shape)
    return shape


def _wrap(name: str, times: int) -> str:
    for _ in range(times):
        name = linear_cell(0, 1, (name,))
    return name


def config_shape(
    vertical_triple: bool, n: int, j: int, i: int
) -> tuple[NCat, list[list[str]]]:
    """The free n-category on a 3x2 configuration of n-cells.

    With ``vertical_triple`` the configuration is a ∘_j-composable triple of
    ∘_i-composable pairs, otherwise a ∘_i-composable triple of ∘_j-composable
    pairs. Both shapes are n-preorders.

    Returns:
        The shape and its generator names ``names[t][p]``: ``t`` runs along the
        triple, ``p`` along the pair.
    """
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i}, j={j}, n={n}")
    inner_steps, outer_steps = (3, 2) if vertical_triple else (2, 3)
    top = globe_top(n - j - 1)
    inner = _suspend(linear(inner_steps, _globe_or_point(n - j - 1)), j - i - 1)
    shape = _suspend(linear(outer_steps, inner), i)

    names: list[list[str]] = []
    for t in range(3):
        row = []
        for p in range(2):
            inner_index, outer_index = (t, p) if vertical_triple else (p, t)
            inner_name = _wrap(linear_cell(inner_index, inner_index + 1, (top,)), j - i - 1)
            outer_name = linear_cell(outer_index, outer_index + 1, (inner_name,))
            row.append(_wrap(outer_name, i))
        names.append(row)
    return shape, names


def with_identity_level(category: NCat) -> NCat:
    """Lift an n-category to an (n+1)-category whose top cells are all identities."""
    n = category.n
    top = [f"id({cell})" for cell in category.cells[n]]
    lift = {cell: f"id({cell})" for cell in category.cells[n]}
    comp = dict(category.comp)
    for i in range(n):
        comp[(n + 1, i)] = {
            (lift[later], lift[earlier]): lift[result]
            for (later, earlier), result in category.comp.get((n, i), {}).items()
        }
    comp[(n + 1, n)] = {(name, name): name for name in top}
    inverse = {name: cell for cell, name in lift.items()}
    return make_ncat(
        n + 1,
        list(category.cells) + [top],
        list(category.src) + [inverse],
        list(category.tgt) + [inverse],
        list(category.idn) + [lift],
        comp,
    )
