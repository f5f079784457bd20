"""Morphism classes and the two factorization systems on n-categories.

The four classes are decided on hom-sets of n-cells:

* vertical: bijective below n, and every non-empty image hom has a non-empty preimage hom
* stably vertical: bijective below n, and every induced hom map is surjective
* trivial covering: every induced hom map with non-empty domain is a bijection
* covering: every induced hom map is injective

The reflective system pairs vertical maps with trivial coverings; the
monotone-light system pairs stably vertical maps with coverings.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import IntEnum, auto

from ncat_engine.limits import is_set_pullback, pullback, pullback_pair
from ncat_engine.ncat import NCat, NFunctor, compose, generated_subcategory, make_ncat
from ncat_engine.reflect import ReflectionResult, induced, is_npreorder, reflect
from ncat_engine.search import iter_functors
from ncat_engine.shapes import parallel_cells

logger = logging.getLogger(__name__)

Row = tuple[str, ...]


class NonCommutingSquareError(Exception):
    """Raised when a square handed to the diagonal filler does not commute."""

    pass


class FactorizationError(Exception):
    """Raised when the sides of a square are not in the declared classes."""

    pass


class FactorizationSystem(IntEnum):
    """Which factorization system a factorization belongs to."""

    REFLECTIVE = auto()  # vertical, then trivial covering
    MONOTONE_LIGHT = auto()  # stably vertical, then covering


@dataclass(frozen=True)
class ClassWitness:
    """Counterexample for a failed class flag.

    Attributes:
        level: Level of the offending cells.
        cells: The offending cells, or the hom pair ``(h, h')``.
        detail: Explanation.
    """

    level: int
    cells: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"level {self.level} [{', '.join(self.cells)}]: {self.detail}"


@dataclass(frozen=True)
class MorphismClass:
    """Membership of an n-functor in the four classes."""

    vertical: bool
    stably_vertical: bool
    trivial_covering: bool
    covering: bool
    witnesses: dict[str, ClassWitness] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "vertical": self.vertical,
            "stably_vertical": self.stably_vertical,
            "trivial_covering": self.trivial_covering,
            "covering": self.covering,
        }

    def in_left_class(self, system: FactorizationSystem) -> bool:
        if system == FactorizationSystem.REFLECTIVE:
            return self.vertical
        return self.stably_vertical

    def in_right_class(self, system: FactorizationSystem) -> bool:
        if system == FactorizationSystem.REFLECTIVE:
            return self.trivial_covering
        return self.covering


@dataclass(frozen=True)
class Factorization:
    """A factorization ``f = m ∘ e`` through ``middle``."""

    e: NFunctor
    middle: NCat
    m: NFunctor
    system: FactorizationSystem


@dataclass(frozen=True)
class DiagonalFill:
    """Every diagonal found for a square; exactly one means the square is filled."""

    diagonals: tuple[NFunctor, ...]

    @property
    def unique(self) -> NFunctor | None:
        return self.diagonals[0] if len(self.diagonals) == 1 else None


def _bijection_failure(f: NFunctor) -> ClassWitness | None:
    for level in range(f.n):
        seen: dict[str, str] = {}
        for cell in f.dom.cells[level]:
            image = f.maps[level][cell]
            if image in seen:
                return ClassWitness(level, (seen[image], cell), f"both sent to {image}")
            seen[image] = cell
        for cell in f.cod.cells[level]:
            if cell not in seen:
                return ClassWitness(level, (cell,), "not in the image")
    return None


def classify(f: NFunctor) -> MorphismClass:
    """Decide the four classes for ``f``, with the first counterexample for each failure."""
    n = f.n
    dom, cod = f.dom, f.cod
    witnesses: dict[str, ClassWitness] = {}
    below = _bijection_failure(f)
    if below is not None:
        witnesses["vertical"] = below
        witnesses["stably_vertical"] = below

    for h, h2 in dom.hom_pairs():
        domain = dom.hom(h, h2)
        fh, fh2 = f.maps[n - 1][h], f.maps[n - 1][h2]
        codomain = cod.hom(fh, fh2)
        images = [f.maps[n][cell] for cell in domain]
        pair = (h, h2)
        if codomain and not domain and "vertical" not in witnesses:
            witnesses["vertical"] = ClassWitness(
                n - 1, pair, f"Hom({fh}, {fh2}) is non-empty but Hom({h}, {h2}) is empty"
            )
        if set(images) != set(codomain) and "stably_vertical" not in witnesses:
            missing = sorted(set(codomain) - set(images))
            witnesses["stably_vertical"] = ClassWitness(
                n - 1, pair, f"{missing[0]} is not the image of an n-cell"
            )
        injective = len(set(images)) == len(images)
        if not injective and "covering" not in witnesses:
            witnesses["covering"] = ClassWitness(n - 1, pair, "induced hom map is not injective")
        if domain and (not injective or set(images) != set(codomain)):
            if "trivial_covering" not in witnesses:
                witnesses["trivial_covering"] = ClassWitness(
                    n - 1, pair, "induced hom map is not a bijection"
                )

    return MorphismClass(
        vertical="vertical" not in witnesses,
        stably_vertical="stably_vertical" not in witnesses,
        trivial_covering="trivial_covering" not in witnesses,
        covering="covering" not in witnesses,
        witnesses=witnesses,
    )


def reflective_factorize(f: NFunctor) -> Factorization:
    """Factor ``f`` through the pullback of ``I f`` along ``η_B``.

    The middle object is ``B ×_{I B} I A``; ``m`` is the first projection and ``e``
    is the mediating functor of ``(f, η_A)``.
    """
    dom_image, cod_image = reflect(f.dom), reflect(f.cod)
    image_f = induced(f, dom_image, cod_image)
    square = pullback(cod_image.unit, image_f)
    e = pullback_pair(f, dom_image.unit, square)
    return Factorization(
        e=e, middle=square.apex, m=square.p1, system=FactorizationSystem.REFLECTIVE
    )


def _tag(cell: str, h: str, h2: str) -> str:
    return f"{cell}@{h}=>{h2}"


def ml_factorize(f: NFunctor) -> Factorization:
    """Monotone-light factorization: keep A below n and the image of each hom at n."""
    a, b, n = f.dom, f.cod, f.n
    tagged: list[tuple[str, str, str]] = []
    for h, h2 in a.hom_pairs():
        for image in sorted({f.maps[n][cell] for cell in a.hom(h, h2)}):
            tagged.append((image, h, h2))

    src, tgt = list(a.src), list(a.tgt)
    src[n] = {_tag(*t): t[1] for t in tagged}
    tgt[n] = {_tag(*t): t[2] for t in tagged}
    idn = list(a.idn)
    idn[n] = {h: _tag(f.maps[n][a.idn[n][h]], h, h) for h in a.cells[n - 1]}

    comp = {key: table for key, table in a.comp.items() if key[0] < n}
    for i in range(n):
        by_source: dict[str, list[tuple[str, str, str]]] = defaultdict(list)
        for t in tagged:
            by_source[a.bnd_src(t[1], n - 1, i)].append(t)
        table: dict[tuple[str, str], str] = {}
        for earlier in tagged:
            meet = earlier[2] if i == n - 1 else a.bnd_tgt(earlier[1], n - 1, i)
            for later in by_source.get(meet, ()):
                result = b.compose_cells(n, i, later[0], earlier[0])
                if result is None:
                    continue
                if i == n - 1:
                    boundary = (earlier[1], later[2])
                else:
                    low = a.comp[(n - 1, i)]
                    boundary = (low[(later[1], earlier[1])], low[(later[2], earlier[2])])
                table[(_tag(*later), _tag(*earlier))] = _tag(result, *boundary)
        comp[(n, i)] = table

    middle = make_ncat(
        n, list(a.cells[:n]) + [[_tag(*t) for t in tagged]], src, tgt, idn, comp
    )
    e_top = {cell: _tag(f.maps[n][cell], a.src[n][cell], a.tgt[n][cell]) for cell in a.cells[n]}
    e = NFunctor(
        dom=a, cod=middle, maps=tuple({c: c for c in lv} for lv in a.cells[:n]) + (e_top,)
    )
    m = NFunctor(
        dom=middle,
        cod=b,
        maps=tuple(dict(lv) for lv in f.maps[:n]) + ({_tag(*t): t[0] for t in tagged},),
    )
    return Factorization(e=e, middle=middle, m=m, system=FactorizationSystem.MONOTONE_LIGHT)


def fill_diagonal(
    e: NFunctor,
    m: NFunctor,
    top: NFunctor,
    bottom: NFunctor,
    system: FactorizationSystem | None = None,
    limit: int | None = None,
) -> DiagonalFill:
    """Find every ``d: B -> C`` with ``d ∘ e = top`` and ``m ∘ d = bottom``.

    Args:
        e: Left side ``A -> B``.
        m: Right side ``C -> D``.
        top: ``A -> C``.
        bottom: ``B -> D``.
        system: If given, ``e`` and ``m`` must lie in its left and right class.
        limit: Stop after this many diagonals.

    Raises:
        NonCommutingSquareError: If ``m ∘ top != bottom ∘ e``.
        FactorizationError: If ``system`` is given and a side is in the wrong class.
    """
    if compose(m, top).maps != compose(bottom, e).maps:
        raise NonCommutingSquareError("m ∘ top and bottom ∘ e disagree")
    if system is not None:
        if not classify(e).in_left_class(system):
            raise FactorizationError(f"left side is not in the left class of {system.name}")
        if not classify(m).in_right_class(system):
            raise FactorizationError(f"right side is not in the right class of {system.name}")

    fibres: list[dict[str, list[str]]] = []
    for level in range(e.n + 1):
        fibre: dict[str, list[str]] = defaultdict(list)
        for cell, image in e.maps[level].items():
            fibre[image].append(cell)
        fibres.append(fibre)

    def fits(level: int, cell: str, image: str) -> bool:
        if m.maps[level][image] != bottom.maps[level][cell]:
            return False
        return all(top.maps[level][a] == image for a in fibres[level].get(cell, ()))

    diagonals: list[NFunctor] = []
    for d in iter_functors(e.cod, m.dom, allowed=fits):
        diagonals.append(d)
        if limit is not None and len(diagonals) >= limit:
            break
    logger.debug(f"diagonal search found {len(diagonals)} fillers")
    return DiagonalFill(diagonals=tuple(diagonals))


def pullback_along(g: NFunctor, f: NFunctor) -> NFunctor:
    """The pullback ``g*(f)``: projection of ``C ×_B A`` onto the domain of ``g``."""
    return pullback(g, f).p1


@dataclass(frozen=True)
class SquareCheck:
    """Whether the η-naturality square of a map is a pullback at one object of n𝕡."""

    label: str
    is_pullback: bool


def _pairs(category: NCat, j: int, i: int) -> list[tuple[str, str]]:
    return sorted(category.comp.get((j, i), {}))


def _quadruples(category: NCat, k: int, j: int, i: int) -> list[tuple[str, str, str, str]]:
    along_j = category.comp.get((k, j), {})
    along_i = category.comp.get((k, i), {})
    earlier_of: dict[str, list[str]] = defaultdict(list)
    for later, earlier in along_i:
        earlier_of[later].append(earlier)
    found = []
    for alpha, beta in sorted(along_j):
        for gamma in earlier_of.get(alpha, ()):
            for delta in earlier_of.get(beta, ()):
                if (gamma, delta) in along_j:
                    found.append((alpha, beta, gamma, delta))
    return found


def naturality_squares(
    f: NFunctor,
    dom_image: ReflectionResult | None = None,
    cod_image: ReflectionResult | None = None,
) -> list[SquareCheck]:
    """Check the η-naturality square of ``f`` at every object of n𝕡.

    The objects are the levels, the sets of composable pairs for every ``i < j``
    and the sets of interchange quadruples for every ``i < j < k``.
    """
    source = reflect(f.dom) if dom_image is None else dom_image
    target = reflect(f.cod) if cod_image is None else cod_image
    image_f = induced(f, source, target)
    n = f.n
    checks: list[SquareCheck] = []

    def square(label: str, level: int, elements: dict[str, list[Row]]) -> None:
        def along(functor: NFunctor, items: list[Row]) -> dict[Row, Row]:
            return {x: tuple(functor.maps[level][c] for c in x) for x in items}

        holds = is_set_pullback(
            elements["a"],
            elements["b"],
            elements["ia"],
            along(f, elements["a"]),
            along(source.unit, elements["a"]),
            along(target.unit, elements["b"]),
            along(image_f, elements["ia"]),
        )
        checks.append(SquareCheck(label, holds))

    cats = {"a": f.dom, "b": f.cod, "ia": source.image}
    for level in range(n + 1):
        square(f"P{level}", level, {k: [(c,) for c in v.cells[level]] for k, v in cats.items()})
    for j in range(1, n + 1):
        for i in range(j):
            square(f"P{j}{i}", j, {k: _pairs(v, j, i) for k, v in cats.items()})
    for k in range(2, n + 1):
        for j in range(1, k):
            for i in range(j):
                square(f"P{k}{j}{i}", k, {x: _quadruples(v, k, j, i) for x, v in cats.items()})
    return checks


def trivial_covering_squares_hold(f: NFunctor) -> bool:
    """Whether every η-naturality square of ``f`` is a pullback of finite sets."""
    return all(check.is_pullback for check in naturality_squares(f))


@dataclass(frozen=True)
class StabilityWitness:
    """A pullback that destroys verticality.

    Attributes:
        theta: An n-cell of the codomain outside the image of f.
        hom: The hom pair ``(h, h')`` of the domain whose image hom contains ``theta``.
        g: Inclusion into the codomain of the sub-n-category generated by ``theta``.
        pulled_back: ``g*(f)``, which is not vertical.
    """

    theta: str
    hom: tuple[str, str]
    g: NFunctor
    pulled_back: NFunctor


def stability_witness(f: NFunctor) -> StabilityWitness | None:
    """Find a pullback of a vertical, not stably vertical ``f`` that is not vertical."""
    verdict = classify(f)
    if not verdict.vertical or verdict.stably_vertical:
        return None
    a, b, n = f.dom, f.cod, f.n
    for h, h2 in a.hom_pairs():
        fh, fh2 = f.maps[n - 1][h], f.maps[n - 1][h2]
        images = {f.maps[n][cell] for cell in a.hom(h, h2)}
        for theta in sorted(set(b.hom(fh, fh2)) - images):
            _, g = generated_subcategory(b, list(b.cells[:n]) + [[theta]])
            pulled_back = pullback_along(g, f)
            if not classify(pulled_back).vertical:
                logger.debug(f"verticality broken by pulling back along the span of {theta}")
                return StabilityWitness(theta, (h, h2), g, pulled_back)
    return None


def nonstable_example() -> tuple[NFunctor, StabilityWitness]:
    """A vertical but not stably vertical 2-functor, certified by its witness.

    The walking 2-cell is sent onto one of two parallel 2-cells.
    """
    walking = parallel_cells(2, 1)
    doubled = parallel_cells(2, 2)
    maps = tuple({c: c for c in level} for level in walking.cells)
    f = NFunctor(dom=walking, cod=doubled, maps=maps)
    witness = stability_witness(f)
    if witness is None:
        raise AssertionError("the two-parallel-cells gadget must break stability")
    return f, witness


def is_covering_by_pullback(f: NFunctor, samples: Iterable[NFunctor]) -> bool:
    """Whether pulling ``f`` back along each sample map out of an n-preorder gives an n-preorder."""
    for x in samples:
        if not is_npreorder(x.dom):
            raise ValueError("sample maps must start at an n-preorder")
        if not is_npreorder(pullback(x, f).apex):
            return False
    return True
