"""The base of finite m-categories, reflected into m-preorders."""

from __future__ import annotations

from collections.abc import Iterator
from functools import cached_property

from enriched.base import Base, BaseCone
from ncat_engine import limits
from ncat_engine.ncat import NCat, NFunctor, compose, identity_functor, invert, is_bijective
from ncat_engine.reflect import ReflectionError, is_npreorder, reflect
from ncat_engine.search import are_isomorphic, find_isomorphism, iter_functors


class BaseMismatchError(Exception):
    """Raised when an object or enriched category does not live over the expected base."""

    pass


class NCatBase(Base[NCat, NFunctor]):
    """Finite m-categories with chosen pointwise limits.

    Args:
        m: Dimension of the objects, at least 1.
        iterated: Reflect m-categories with ``m > 1`` through the enriched
            iteration instead of directly.
    """

    def __init__(self, m: int, iterated: bool = True):
        if m < 1:
            raise ValueError("the base needs objects of dimension at least 1")
        self.m = m
        self.iterated = iterated

    @property
    def name(self) -> str:
        mode = "iterated" if self.iterated and self.m > 1 else "direct"
        return f"{self.m}-categories ({mode} reflection)"

    @cached_property
    def _terminal(self) -> NCat:
        return limits.terminal(self.m)

    def _expect(self, x: NCat) -> NCat:
        if x.n != self.m:
            raise BaseMismatchError(f"expected a {self.m}-category, got a {x.n}-category")
        return x

    def terminal(self) -> NCat:
        return self._terminal

    def to_terminal(self, x: NCat) -> NFunctor:
        return limits.to_terminal(self._expect(x), self._terminal)

    def pullback(self, f: NFunctor, g: NFunctor) -> BaseCone[NCat, NFunctor]:
        square = limits.pullback(f, g)
        return BaseCone(square.apex, square.p1, square.p2)

    def pullback_pair(
        self, u: NFunctor, v: NFunctor, target: BaseCone[NCat, NFunctor]
    ) -> NFunctor:
        return limits.pullback_pair(u, v, limits.Pullback(*target))

    def compose(self, g: NFunctor, f: NFunctor) -> NFunctor:
        return compose(g, f)

    def identity(self, x: NCat) -> NFunctor:
        return identity_functor(x)

    def dom(self, f: NFunctor) -> NCat:
        return f.dom

    def cod(self, f: NFunctor) -> NCat:
        return f.cod

    def morphisms_equal(self, f: NFunctor, g: NFunctor) -> bool:
        return f.maps == g.maps and f.dom == g.dom and f.cod == g.cod

    def reflect(self, x: NCat) -> tuple[NCat, NFunctor]:
        self._expect(x)
        if is_npreorder(x):
            return x, identity_functor(x)
        if self.m == 1 or not self.iterated:
            result = reflect(x)
            return result.image, result.unit
        from enriched.iteration import iterate_reflect

        unit = iterate_reflect(x)
        return unit.cod, unit

    def is_reflected(self, x: NCat) -> bool:
        return is_npreorder(x)

    def reflect_morphism(self, f: NFunctor) -> NFunctor:
        """Factor ``η_B ∘ f`` through ``η_A``.

        Raises:
            ReflectionError: If ``η_B ∘ f`` is not constant on the fibres of ``η_A``.
        """
        source, source_unit = self.reflect(f.dom)
        target, target_unit = self.reflect(f.cod)
        maps: list[dict[str, str]] = []
        for level in range(f.n + 1):
            table: dict[str, str] = {}
            for cell, image in f.maps[level].items():
                key = source_unit.maps[level][cell]
                value = target_unit.maps[level][image]
                if table.setdefault(key, value) != value:
                    raise ReflectionError(f"reflected map is not well defined on {key}")
            maps.append(table)
        return NFunctor(dom=source, cod=target, maps=tuple(maps))

    def is_isomorphism(self, f: NFunctor) -> bool:
        return is_bijective(f)

    def inverse(self, f: NFunctor) -> NFunctor:
        return invert(f)

    def objects_isomorphic(self, a: NCat, b: NCat) -> bool:
        return are_isomorphic(a, b)

    def iter_morphisms(self, a: NCat, b: NCat) -> Iterator[NFunctor]:
        return iter_functors(a, b)

    def find_isomorphism(self, a: NCat, b: NCat) -> NFunctor | None:
        witness = find_isomorphism(a, b)
        return None if witness is None else witness.forward
