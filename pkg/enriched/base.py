"""Abstract cartesian base with a reflector, for enriched categories."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Iterator
from typing import Generic, NamedTuple, TypeVar

ObjT = TypeVar("ObjT")
MorT = TypeVar("MorT")


class BaseCone(NamedTuple, Generic[ObjT, MorT]):
    """A chosen product or pullback: apex and its two projections."""

    apex: ObjT
    p1: MorT
    p2: MorT


class Base(ABC, Generic[ObjT, MorT]):
    """A finite cartesian category together with a reflection into a full subcategory.

    Implementations choose terminal objects, products and pullbacks once, so
    that structure built from them compares equal by value. The reflector must
    send a reflected object to itself with the identity unit.
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Short description used in reports."""
        ...

    @abstractmethod
    def terminal(self) -> ObjT:
        ...

    @abstractmethod
    def to_terminal(self, x: ObjT) -> MorT:
        ...

    @abstractmethod
    def pullback(self, f: MorT, g: MorT) -> BaseCone[ObjT, MorT]:
        """Chosen pullback of the cospan ``f: A -> X <- B: g``."""
        ...

    @abstractmethod
    def pullback_pair(self, u: MorT, v: MorT, target: BaseCone[ObjT, MorT]) -> MorT:
        """The morphism into ``target.apex`` with projections ``u`` and ``v``."""
        ...

    @abstractmethod
    def compose(self, g: MorT, f: MorT) -> MorT:
        """``g ∘ f`` (f first)."""
        ...

    @abstractmethod
    def identity(self, x: ObjT) -> MorT:
        ...

    @abstractmethod
    def dom(self, f: MorT) -> ObjT:
        ...

    @abstractmethod
    def cod(self, f: MorT) -> ObjT:
        ...

    @abstractmethod
    def morphisms_equal(self, f: MorT, g: MorT) -> bool:
        ...

    @abstractmethod
    def reflect(self, x: ObjT) -> tuple[ObjT, MorT]:
        """The reflection ``F x`` together with the unit ``η_x: x -> F x``."""
        ...

    @abstractmethod
    def is_reflected(self, x: ObjT) -> bool:
        """Whether ``x`` lies in the reflective subcategory."""
        ...

    @abstractmethod
    def is_isomorphism(self, f: MorT) -> bool:
        ...

    @abstractmethod
    def inverse(self, f: MorT) -> MorT:
        """Inverse of an isomorphism.

        Raises:
            ValueError: If ``f`` is not an isomorphism.
        """
        ...

    @abstractmethod
    def objects_isomorphic(self, a: ObjT, b: ObjT) -> bool:
        ...

    @abstractmethod
    def iter_morphisms(self, a: ObjT, b: ObjT) -> Iterator[MorT]:
        """Every morphism ``a -> b``, in a deterministic order."""
        ...

    @abstractmethod
    def reflect_morphism(self, f: MorT) -> MorT:
        """``F f``: the unique map with ``F f ∘ η_A = η_B ∘ f``."""
        ...

    def product(self, a: ObjT, b: ObjT) -> BaseCone[ObjT, MorT]:
        """Chosen binary product, as the pullback over the terminal object."""
        return self.pullback(self.to_terminal(a), self.to_terminal(b))

    def pair(self, u: MorT, v: MorT, target: BaseCone[ObjT, MorT]) -> MorT:
        return self.pullback_pair(u, v, target)

    def product_map(
        self,
        u: MorT,
        v: MorT,
        source: BaseCone[ObjT, MorT],
        target: BaseCone[ObjT, MorT],
    ) -> MorT:
        """``u × v`` from ``source.apex`` to ``target.apex``."""
        return self.pair(
            self.compose(u, source.p1), self.compose(v, source.p2), target
        )

    def find_isomorphism(self, a: ObjT, b: ObjT) -> MorT | None:
        """First isomorphism ``a -> b`` in enumeration order, or None."""
        for f in self.iter_morphisms(a, b):
            if self.is_isomorphism(f):
                return f
        return None
