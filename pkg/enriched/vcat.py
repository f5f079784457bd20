"""Categories and functors enriched in a cartesian base.

Only the cartesian monoidal structure is used: associators and unitors are
built from chosen product projections and never stored.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Any, Generic, NamedTuple

from enriched.base import Base, BaseCone, MorT, ObjT

logger = logging.getLogger(__name__)

UNIT_OBJECT = "*"


def object_pair(a: str, b: str) -> str:
    return f"({a}|{b})"


@dataclass(frozen=True, eq=False)
class VCat(Generic[ObjT, MorT]):
    """A category enriched in ``base``.

    Attributes:
        base: The base the hom-objects live in.
        objects: Object names, sorted.
        hom: Hom-object for every ordered pair of objects.
        comp: ``comp[(a, b, c)]: hom(b, c) × hom(a, b) -> hom(a, c)``.
        unit: ``unit[a]: terminal -> hom(a, a)``.
    """

    base: Base[ObjT, MorT]
    objects: tuple[str, ...]
    hom: dict[tuple[str, str], ObjT]
    comp: dict[tuple[str, str, str], MorT]
    unit: dict[str, MorT]

    def hom_product(self, a: str, b: str, c: str) -> BaseCone[ObjT, MorT]:
        """Chosen product ``hom(b, c) × hom(a, b)``, the domain of ``comp[(a, b, c)]``."""
        return self.base.product(self.hom[(b, c)], self.hom[(a, b)])

    def pairs(self) -> Iterator[tuple[str, str]]:
        for a in self.objects:
            for b in self.objects:
                yield a, b


@dataclass(frozen=True, eq=False)
class VFunctor(Generic[ObjT, MorT]):
    """An enriched functor: an object map and one base morphism per hom."""

    dom: VCat[ObjT, MorT]
    cod: VCat[ObjT, MorT]
    objects: dict[str, str]
    homs: dict[tuple[str, str], MorT]


class VPullback(NamedTuple):
    """Apex of a pullback of enriched categories with its projections."""

    apex: VCat[Any, Any]
    p1: VFunctor[Any, Any]
    p2: VFunctor[Any, Any]


@dataclass(frozen=True)
class VViolation:
    """First axiom found broken in an enriched category or functor."""

    law: str
    objects: tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        text = f"{self.law} violated at objects ({', '.join(self.objects)})"
        return f"{text}: {self.detail}" if self.detail else text


class VCatValidationError(Exception):
    """Raised when an enriched category or functor fails validation."""

    def __init__(self, violation: VViolation):
        super().__init__(str(violation))
        self.violation = violation


def _check_structure(v: VCat[ObjT, MorT]) -> VViolation | None:
    base = v.base
    for a, b in v.pairs():
        if (a, b) not in v.hom:
            return VViolation("structure", (a, b), "missing hom-object")
    for a in v.objects:
        if a not in v.unit:
            return VViolation("structure", (a,), "missing unit")
        if base.dom(v.unit[a]) != base.terminal() or base.cod(v.unit[a]) != v.hom[(a, a)]:
            return VViolation("structure", (a,), "unit has the wrong ends")
    for a, b, c in cartesian(v.objects, repeat=3):
        if (a, b, c) not in v.comp:
            return VViolation("structure", (a, b, c), "missing composition")
        law = v.comp[(a, b, c)]
        if base.dom(law) != v.hom_product(a, b, c).apex or base.cod(law) != v.hom[(a, c)]:
            return VViolation("structure", (a, b, c), "composition has the wrong ends")
    return None


def _check_associativity(v: VCat[ObjT, MorT]) -> VViolation | None:
    base = v.base
    for a, b, c, d in cartesian(v.objects, repeat=4):
        first = v.hom_product(b, c, d)
        outer = base.product(first.apex, v.hom[(a, b)])
        # ((hom(c,d) × hom(b,c)) × hom(a,b)) -> hom(b,d) × hom(a,b) -> hom(a,d)
        left = base.compose(
            v.comp[(a, b, d)],
            base.product_map(
                v.comp[(b, c, d)], base.identity(v.hom[(a, b)]), outer, v.hom_product(a, b, d)
            ),
        )
        # rearrange to hom(c,d) × (hom(b,c) × hom(a,b)), then compose on the right first
        inner = v.hom_product(a, b, c)
        regrouped = base.product(v.hom[(c, d)], inner.apex)
        associator = base.pair(
            base.compose(first.p1, outer.p1),
            base.pair(base.compose(first.p2, outer.p1), outer.p2, inner),
            regrouped,
        )
        right = base.compose(
            v.comp[(a, c, d)],
            base.compose(
                base.product_map(
                    base.identity(v.hom[(c, d)]),
                    v.comp[(a, b, c)],
                    regrouped,
                    v.hom_product(a, c, d),
                ),
                associator,
            ),
        )
        if not base.morphisms_equal(left, right):
            return VViolation("associativity", (a, b, c, d))
    return None


def _check_units(v: VCat[ObjT, MorT]) -> VViolation | None:
    base = v.base
    for a, b in v.pairs():
        hom = v.hom[(a, b)]
        identity = base.identity(hom)
        to_one = base.to_terminal(hom)
        right_unit = base.compose(
            v.comp[(a, a, b)],
            base.pair(identity, base.compose(v.unit[a], to_one), v.hom_product(a, a, b)),
        )
        if not base.morphisms_equal(right_unit, identity):
            return VViolation("right-unit", (a, b))
        left_unit = base.compose(
            v.comp[(a, b, b)],
            base.pair(base.compose(v.unit[b], to_one), identity, v.hom_product(a, b, b)),
        )
        if not base.morphisms_equal(left_unit, identity):
            return VViolation("left-unit", (a, b))
    return None


def check_vcat(raw: VCat[ObjT, MorT]) -> VViolation | None:
    """Return the first violated axiom, or None."""
    for check in (_check_structure, _check_associativity, _check_units):
        violation = check(raw)
        if violation is not None:
            logger.debug(f"enriched category rejected: {violation}")
            return violation
    return None


def vcat_validate(raw: VCat[ObjT, MorT]) -> VCat[ObjT, MorT]:
    """Validate an enriched category.

    Raises:
        VCatValidationError: With the first violated axiom.
    """
    violation = check_vcat(raw)
    if violation is not None:
        raise VCatValidationError(violation)
    return raw


def check_vfunctor(t: VFunctor[ObjT, MorT]) -> VViolation | None:
    """Return the first failure of compatibility with composition or identities."""
    base, dom, cod = t.dom.base, t.dom, t.cod
    for a in dom.objects:
        if t.objects.get(a) not in cod.objects:
            return VViolation("structure", (a,), "object map is not total")
    for a, b in dom.pairs():
        component = t.homs.get((a, b))
        if component is None:
            return VViolation("structure", (a, b), "missing hom component")
        if base.dom(component) != dom.hom[(a, b)] or (
            base.cod(component) != cod.hom[(t.objects[a], t.objects[b])]
        ):
            return VViolation("structure", (a, b), "hom component has the wrong ends")
    for a, b, c in cartesian(dom.objects, repeat=3):
        ta, tb, tc = t.objects[a], t.objects[b], t.objects[c]
        before = base.compose(t.homs[(a, c)], dom.comp[(a, b, c)])
        after = base.compose(
            cod.comp[(ta, tb, tc)],
            base.product_map(
                t.homs[(b, c)],
                t.homs[(a, b)],
                dom.hom_product(a, b, c),
                cod.hom_product(ta, tb, tc),
            ),
        )
        if not base.morphisms_equal(before, after):
            return VViolation("composition-compatibility", (a, b, c))
    for a in dom.objects:
        if not base.morphisms_equal(
            base.compose(t.homs[(a, a)], dom.unit[a]), cod.unit[t.objects[a]]
        ):
            return VViolation("identity-compatibility", (a,))
    return None


def identity_vfunctor(v: VCat[ObjT, MorT]) -> VFunctor[ObjT, MorT]:
    return VFunctor(
        dom=v,
        cod=v,
        objects={a: a for a in v.objects},
        homs={pair: v.base.identity(v.hom[pair]) for pair in v.pairs()},
    )


def compose_vfunctors(s: VFunctor[ObjT, MorT], t: VFunctor[ObjT, MorT]) -> VFunctor[ObjT, MorT]:
    """``s ∘ t`` (t first)."""
    base = t.dom.base
    return VFunctor(
        dom=t.dom,
        cod=s.cod,
        objects={a: s.objects[t.objects[a]] for a in t.dom.objects},
        homs={
            (a, b): base.compose(s.homs[(t.objects[a], t.objects[b])], t.homs[(a, b)])
            for a, b in t.dom.pairs()
        },
    )


def vfunctors_equal(s: VFunctor[ObjT, MorT], t: VFunctor[ObjT, MorT]) -> bool:
    base = s.dom.base
    if s.objects != t.objects:
        return False
    return all(base.morphisms_equal(s.homs[pair], t.homs[pair]) for pair in s.dom.pairs())


def is_vfunctor_isomorphism(t: VFunctor[ObjT, MorT]) -> bool:
    """Bijective on objects with every hom component an isomorphism of the base."""
    images = set(t.objects.values())
    if len(images) != len(t.dom.objects) or images != set(t.cod.objects):
        return False
    return all(t.dom.base.is_isomorphism(t.homs[pair]) for pair in t.dom.pairs())


def invert_vfunctor(t: VFunctor[ObjT, MorT]) -> VFunctor[ObjT, MorT]:
    """Inverse of an enriched isomorphism.

    Raises:
        ValueError: If ``t`` is not an isomorphism.
    """
    if not is_vfunctor_isomorphism(t):
        raise ValueError("enriched functor is not an isomorphism")
    base = t.dom.base
    back = {image: a for a, image in t.objects.items()}
    return VFunctor(
        dom=t.cod,
        cod=t.dom,
        objects=back,
        homs={
            (x, y): base.inverse(t.homs[(back[x], back[y])]) for x, y in t.cod.pairs()
        },
    )


def unit_vcat(base: Base[ObjT, MorT]) -> VCat[ObjT, MorT]:
    """One object whose hom is the terminal object."""
    one = base.terminal()
    cone = base.product(one, one)
    return VCat(
        base=base,
        objects=(UNIT_OBJECT,),
        hom={(UNIT_OBJECT, UNIT_OBJECT): one},
        comp={(UNIT_OBJECT,) * 3: base.to_terminal(cone.apex)},
        unit={UNIT_OBJECT: base.identity(one)},
    )


def to_unit(v: VCat[ObjT, MorT]) -> VFunctor[ObjT, MorT]:
    """The unique enriched functor into ``unit_vcat``."""
    base = v.base
    return VFunctor(
        dom=v,
        cod=unit_vcat(base),
        objects={a: UNIT_OBJECT for a in v.objects},
        homs={pair: base.to_terminal(v.hom[pair]) for pair in v.pairs()},
    )


def vcat_pullback(f: VFunctor[ObjT, MorT], g: VFunctor[ObjT, MorT]) -> VPullback:
    """Pullback computed hom-componentwise in the base.

    Objects are the pairs ``(a|b)`` with ``f a = g b``.
    """
    base = f.dom.base
    left, right = f.dom, g.dom
    members = sorted(
        (a, b) for a in left.objects for b in right.objects if f.objects[a] == g.objects[b]
    )
    names = {pair: object_pair(*pair) for pair in members}
    cones: dict[tuple[str, str], BaseCone[ObjT, MorT]] = {}
    for x in members:
        for y in members:
            cones[(names[x], names[y])] = base.pullback(
                f.homs[(x[0], y[0])], g.homs[(x[1], y[1])]
            )

    comp: dict[tuple[str, str, str], MorT] = {}
    for x, y, z in cartesian(members, repeat=3):
        first, second = cones[(names[y], names[z])], cones[(names[x], names[y])]
        source = base.product(first.apex, second.apex)
        leg_a = base.compose(
            left.comp[(x[0], y[0], z[0])],
            base.product_map(first.p1, second.p1, source, left.hom_product(x[0], y[0], z[0])),
        )
        leg_b = base.compose(
            right.comp[(x[1], y[1], z[1])],
            base.product_map(first.p2, second.p2, source, right.hom_product(x[1], y[1], z[1])),
        )
        comp[(names[x], names[y], names[z])] = base.pullback_pair(
            leg_a, leg_b, cones[(names[x], names[z])]
        )
    unit = {
        names[x]: base.pullback_pair(
            left.unit[x[0]], right.unit[x[1]], cones[(names[x], names[x])]
        )
        for x in members
    }
    apex: VCat[ObjT, MorT] = VCat(
        base=base,
        objects=tuple(names[x] for x in members),
        hom={key: cone.apex for key, cone in cones.items()},
        comp=comp,
        unit=unit,
    )
    p1: VFunctor[ObjT, MorT] = VFunctor(
        apex, left, {names[x]: x[0] for x in members}, {k: c.p1 for k, c in cones.items()}
    )
    p2: VFunctor[ObjT, MorT] = VFunctor(
        apex, right, {names[x]: x[1] for x in members}, {k: c.p2 for k, c in cones.items()}
    )
    return VPullback(apex, p1, p2)


def vcat_product(a: VCat[ObjT, MorT], b: VCat[ObjT, MorT]) -> VPullback:
    """Product of enriched categories: pairs of objects, products of homs."""
    return vcat_pullback(to_unit(a), to_unit(b))


def mediating_vfunctors(
    t1: VFunctor[ObjT, MorT], t2: VFunctor[ObjT, MorT], target: VPullback
) -> list[VFunctor[ObjT, MorT]]:
    """Every enriched functor ``T`` into ``target.apex`` with ``p1 T = t1`` and ``p2 T = t2``.

    The search is exhaustive over base morphisms hom by hom.
    """
    source = t1.dom
    base = source.base
    apex = target.apex
    objects: dict[str, str] = {}
    for c in source.objects:
        name = object_pair(t1.objects[c], t2.objects[c])
        if name not in apex.objects:
            return []
        objects[c] = name

    pairs = list(source.pairs())
    options: list[list[MorT]] = []
    for c, d in pairs:
        key = (objects[c], objects[d])
        first, second = target.p1.homs[key], target.p2.homs[key]
        options.append(
            [
                m
                for m in base.iter_morphisms(source.hom[(c, d)], apex.hom[key])
                if base.morphisms_equal(base.compose(first, m), t1.homs[(c, d)])
                and base.morphisms_equal(base.compose(second, m), t2.homs[(c, d)])
            ]
        )

    mediators: list[VFunctor[ObjT, MorT]] = []
    for choice in cartesian(*options):
        candidate: VFunctor[ObjT, MorT] = VFunctor(
            source, apex, dict(objects), dict(zip(pairs, choice))
        )
        if check_vfunctor(candidate) is None:
            mediators.append(candidate)
    return mediators


def derive_reflect(v: VCat[ObjT, MorT]) -> tuple[VCat[ObjT, MorT], VFunctor[ObjT, MorT]]:
    """Apply the base reflector hom-wise.

    Composition is transported along the inverse of ``F(η × η)``, which the base
    conditions make an isomorphism.

    Returns:
        The reflected enriched category and the comparison functor with unit components.
    """
    base = v.base
    reflected = {pair: base.reflect(v.hom[pair]) for pair in v.pairs()}
    hom = {pair: image for pair, (image, _) in reflected.items()}
    units = {pair: unit for pair, (_, unit) in reflected.items()}

    comp: dict[tuple[str, str, str], MorT] = {}
    for a, b, c in cartesian(v.objects, repeat=3):
        source = v.hom_product(a, b, c)
        target = base.product(hom[(b, c)], hom[(a, b)])
        comparison = base.reflect_morphism(
            base.product_map(units[(b, c)], units[(a, b)], source, target)
        )
        comp[(a, b, c)] = base.compose(
            base.reflect_morphism(v.comp[(a, b, c)]), base.inverse(comparison)
        )
    unit = {a: base.reflect_morphism(v.unit[a]) for a in v.objects}
    image: VCat[ObjT, MorT] = VCat(base, v.objects, hom, comp, unit)
    theta: VFunctor[ObjT, MorT] = VFunctor(v, image, {a: a for a in v.objects}, units)
    return image, theta


def derive_functor(
    t: VFunctor[ObjT, MorT],
    dom_image: VCat[ObjT, MorT] | None = None,
    cod_image: VCat[ObjT, MorT] | None = None,
) -> VFunctor[ObjT, MorT]:
    """The reflected functor ``𝔽T`` between reflected enriched categories."""
    source = derive_reflect(t.dom)[0] if dom_image is None else dom_image
    target = derive_reflect(t.cod)[0] if cod_image is None else cod_image
    base = t.dom.base
    return VFunctor(
        source,
        target,
        dict(t.objects),
        {pair: base.reflect_morphism(t.homs[pair]) for pair in t.dom.pairs()},
    )


def stable_units_enriched(f: VFunctor[ObjT, MorT], g: VFunctor[ObjT, MorT]) -> bool:
    """Whether the derived reflector preserves the pullback of ``f`` and ``g``.

    The cospan vertex must have reflected homs. The canonical comparison from
    the reflected pullback to the pullback of reflections is checked to be an
    isomorphism on every hom.

    Raises:
        ValueError: If the cospan vertex is not reflected.
    """
    base = f.dom.base
    vertex = f.cod
    if not all(base.is_reflected(vertex.hom[pair]) for pair in vertex.pairs()):
        raise ValueError("the cospan vertex must have reflected hom-objects")
    square = vcat_pullback(f, g)
    image, _ = derive_reflect(square.apex)
    left_image, _ = derive_reflect(f.dom)
    right_image, _ = derive_reflect(g.dom)
    vertex_image, _ = derive_reflect(vertex)
    image_f = derive_functor(f, left_image, vertex_image)
    image_g = derive_functor(g, right_image, vertex_image)
    reflected_square = vcat_pullback(image_f, image_g)
    if image.objects != reflected_square.apex.objects:
        return False
    p1 = derive_functor(square.p1, image, left_image)
    p2 = derive_functor(square.p2, image, right_image)
    for x, y in image.pairs():
        cone = base.pullback(
            image_f.homs[(p1.objects[x], p1.objects[y])],
            image_g.homs[(p2.objects[x], p2.objects[y])],
        )
        comparison = base.pullback_pair(p1.homs[(x, y)], p2.homs[(x, y)], cone)
        if not base.is_isomorphism(comparison):
            logger.debug(f"comparison is not invertible on hom ({x}, {y})")
            return False
    return True
