"""Seeded random n-categories, functors and validator mutations.

Every generator takes a ``random.Random`` so that a trial is replayed exactly
from its seed. Categories are combined from the seed library with products,
coproducts, suspensions, identity lifts, linear shapes and preorder closures,
so they are valid by construction.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

from ncat_engine.config import load_settings
from ncat_engine.descent import preorder_closure
from ncat_engine.limits import coproduct, product
from ncat_engine.ncat import NCat, NFunctor, make_ncat, truncate
from ncat_engine.reflect import reflect
from ncat_engine.search import iter_functors
from ncat_engine.shapes import linear, suspension, with_identity_level
from testkit.library import parallel_pairs, poset, seed_library

logger = logging.getLogger(__name__)

MAX_ATTEMPTS = 40
FUNCTOR_SAMPLE_LIMIT = 200


def generator_count(category: NCat) -> int:
    """Largest number of non-identity cells on any level (objects count at level 0)."""
    counts = [len(category.cells[0])]
    for level in range(1, category.n + 1):
        counts.append(len(category.cells[level]) - len(category.identity_cells[level]))
    return max(counts)


def fits(category: NCat, size: int) -> bool:
    cap = load_settings().max_cells
    return generator_count(category) <= size and max(category.cells_count()) <= cap


def random_poset(rng: random.Random, size: int) -> NCat:
    """A random partial order on at most ``size`` objects."""
    count = rng.randint(1, max(1, size))
    objects = [f"x{k}" for k in range(count)]
    covers = [
        (objects[a], objects[b])
        for a in range(count)
        for b in range(a + 1, count)
        if rng.random() < 0.4
    ]
    return poset(objects, covers)


def _candidate(rng: random.Random, n: int, size: int, depth: int) -> NCat:
    seeds = seed_library(n)
    choice = rng.choice(
        ["seed", "seed", "product", "coproduct", "lift", "closure", "poset", "linear"]
    )
    if depth > 2:
        choice = "seed"
    match choice:
        case "poset" if n == 1:
            return random_poset(rng, size)
        case "product":
            return product(
                _candidate(rng, n, size, depth + 1), _candidate(rng, n, size, depth + 1)
            ).apex
        case "coproduct":
            parts = [_candidate(rng, n, size, depth + 1) for _ in range(2)]
            return coproduct(parts).apex
        case "lift" if n > 1:
            lower = _candidate(rng, n - 1, size, depth + 1)
            return suspension(lower) if rng.random() < 0.5 else with_identity_level(lower)
        case "linear":
            return random_linear(rng, n, size)
        case "closure" if n > 1:
            skeleton = _candidate(rng, n - 1, size, depth + 1)
            pairs = parallel_pairs(skeleton)
            generators = [pair for pair in pairs if rng.random() < 0.3]
            return preorder_closure(skeleton, generators)
        case _:
            return seeds[rng.choice(sorted(seeds))]


def random_ncat(rng: random.Random, n: int, size: int) -> NCat:
    """A random valid n-category with at most ``size`` non-identity cells per level.

    Falls back to a seed from the library when no combination fits.
    """
    for _ in range(MAX_ATTEMPTS):
        candidate = _candidate(rng, n, size, 0)
        if fits(candidate, size):
            return candidate
    seeds = [s for s in seed_library(n).values() if fits(s, size)]
    return rng.choice(seeds) if seeds else seed_library(n)["terminal"]


def random_npreorder(rng: random.Random, n: int, size: int) -> NCat:
    """A random n-preorder, as the reflection of a random n-category."""
    return reflect(random_ncat(rng, n, size)).image


def random_linear(rng: random.Random, n: int, size: int) -> NCat:
    """A random linear shape ``linear(r, H)`` with a random (n-1)-category H."""
    hom = None if n == 1 else random_ncat(rng, n - 1, size)
    return linear(rng.randint(0, 2), hom)


def constant_functor(dom: NCat, cod: NCat, obj: str) -> NFunctor:
    """The functor sending everything to identities on ``obj``."""
    return NFunctor(
        dom=dom,
        cod=cod,
        maps=tuple(
            {cell: cod.identity_tower(obj, 0, level) for cell in dom.cells[level]}
            for level in range(dom.n + 1)
        ),
    )


def random_functor(
    rng: random.Random, dom: NCat, cod: NCat, limit: int = FUNCTOR_SAMPLE_LIMIT
) -> NFunctor | None:
    """A functor chosen uniformly among the first ``limit`` found, or None if there is none."""
    found = []
    for f in iter_functors(dom, cod):
        found.append(f)
        if len(found) >= limit:
            break
    if not found:
        return None
    return rng.choice(found)


def sample_functor(rng: random.Random, dom: NCat, cod: NCat) -> NFunctor:
    """Like ``random_functor``, falling back to a constant functor.

    Raises:
        ValueError: If ``cod`` has no objects while ``dom`` has some.
    """
    f = random_functor(rng, dom, cod)
    if f is not None:
        return f
    if not cod.cells[0]:
        raise ValueError("no functor into an empty codomain")
    return constant_functor(dom, cod, rng.choice(cod.cells[0]))


@dataclass(frozen=True)
class Mutation:
    """A single-entry change to one table of a valid n-category.

    Attributes:
        table: ``"src"``, ``"tgt"``, ``"idn"`` or ``"comp"``.
        level: Level of the table, ``(j, i)`` for composition.
        key: The changed entry.
        old: Previous value.
        new: Replacement value.
        category: The mutated n-category.
    """

    table: str
    level: tuple[int, ...]
    key: str
    old: str
    new: str
    category: NCat


def _replace(category: NCat, table: str, level: int, key: str, value: str) -> NCat:
    tables = {
        "src": [dict(t) for t in category.src],
        "tgt": [dict(t) for t in category.tgt],
        "idn": [dict(t) for t in category.idn],
    }
    tables[table][level][key] = value
    return make_ncat(
        category.n, category.cells, tables["src"], tables["tgt"], tables["idn"], category.comp
    )


def _boundary_mutation(rng: random.Random, category: NCat, table: str) -> Mutation:
    source = {"src": category.src, "tgt": category.tgt, "idn": category.idn}[table]
    level = rng.choice([lv for lv in range(1, category.n + 1) if source[lv]])
    choices = sorted(source[level])
    key = rng.choice(choices)
    old = source[level][key]
    pool = category.cells[level] if table == "idn" else category.cells[level - 1]
    others = [cell for cell in pool if cell != old]
    new = rng.choice(others) if others else f"{old}'"
    return Mutation(table, (level,), key, old, new, _replace(category, table, level, key, new))


def _is_unit_entry(category: NCat, j: int, i: int, later: str, earlier: str) -> bool:
    left = category.identity_tower(category.bnd_tgt(earlier, j, i), i, j)
    right = category.identity_tower(category.bnd_src(later, j, i), i, j)
    return later == left or earlier == right


def _comp_mutation(rng: random.Random, category: NCat) -> Mutation | None:
    entries = []
    for (j, i), table in sorted(category.comp.items()):
        for (later, earlier), result in sorted(table.items()):
            for cell in category.cells[j]:
                if cell == result:
                    continue
                unit_argument = _is_unit_entry(category, j, i, later, earlier)
                moved = (category.src[j][cell], category.tgt[j][cell]) != (
                    category.src[j][result],
                    category.tgt[j][result],
                )
                if unit_argument or moved:
                    entries.append((j, i, later, earlier, result, cell))
    if not entries:
        return None
    j, i, later, earlier, result, cell = rng.choice(entries)
    comp = {key: dict(table) for key, table in category.comp.items()}
    comp[(j, i)][(later, earlier)] = cell
    mutated = make_ncat(category.n, category.cells, category.src, category.tgt, category.idn, comp)
    return Mutation("comp", (j, i), f"{later}|{earlier}", result, cell, mutated)


def random_mutation(rng: random.Random, category: NCat) -> Mutation:
    """Change one table entry so that the result is no longer an n-category.

    Boundary and identity changes are always detectable. Composition changes are
    limited to entries with an identity argument or to results with a different
    boundary, since other replacements can give another valid n-category.
    """
    table = rng.choice(["src", "tgt", "idn", "comp"])
    if table == "comp":
        mutation = _comp_mutation(rng, category)
        if mutation is not None:
            return mutation
        table = "idn"
    return _boundary_mutation(rng, category, table)


def random_skeleton(rng: random.Random, n: int, size: int) -> NCat:
    """A random (n-1)-category to close into an n-preorder (n >= 2)."""
    return truncate(random_ncat(rng, n, size), n - 1)
