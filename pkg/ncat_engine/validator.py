"""Law checking for n-categories and n-functors.

Checks run in a fixed order (structure, composition domains, then the algebraic
laws), and the first failure is reported with the law, the levels involved and
the offending cells.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass

from ncat_engine.ncat import NCat, NFunctor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """First law found broken by a check.

    Attributes:
        law: Name of the law, e.g. ``"interchange"`` or ``"src-preservation"``.
        levels: Level or level pair the law was checked at.
        cells: Offending cells.
        detail: Human readable explanation.
    """

    law: str
    levels: tuple[int, ...]
    cells: tuple[str, ...]
    detail: str = ""

    def __str__(self) -> str:
        levels = ",".join(str(level) for level in self.levels)
        cells = ", ".join(self.cells)
        text = f"{self.law} violated at levels ({levels}) on cells [{cells}]"
        return f"{text}: {self.detail}" if self.detail else text


class NCatValidationError(Exception):
    """Raised when an n-category or n-functor fails validation."""

    def __init__(self, violation: Violation):
        super().__init__(str(violation))
        self.violation = violation


class StructuralError(NCatValidationError):
    """A table is missing, not total, or references a cell that does not exist."""

    pass


class DomainError(NCatValidationError):
    """A composition table is defined off, or undefined on, the composable pairs."""

    pass


class LawViolation(NCatValidationError):
    """An algebraic law fails."""

    pass


STRUCTURAL_LAWS = frozenset({"structure"})
DOMAIN_LAWS = frozenset({"composition-domain"})


def _raise_for(violation: Violation) -> None:
    if violation.law in STRUCTURAL_LAWS:
        raise StructuralError(violation)
    if violation.law in DOMAIN_LAWS:
        raise DomainError(violation)
    raise LawViolation(violation)


def check_ncat(raw: NCat) -> Violation | None:
    """Run every check and return the first violation, or None if valid."""
    for check in (
        _check_structure,
        _check_globularity,
        _check_identity_boundaries,
        _check_composition_domains,
        _check_composite_boundaries,
        _check_unit_laws,
        _check_associativity,
        _check_identity_functoriality,
        _check_interchange,
    ):
        violation = check(raw)
        if violation is not None:
            logger.debug(f"n-category rejected: {violation}")
            return violation
    return None


def validate_ncat(raw: NCat) -> NCat:
    """Validate an n-category.

    Args:
        raw: Candidate n-category.

    Returns:
        The same value, once every law has been checked.

    Raises:
        StructuralError: For dangling or missing table data.
        DomainError: For a composition table whose domain is not the composable pairs.
        LawViolation: For the first failing algebraic law.
    """
    violation = check_ncat(raw)
    if violation is not None:
        _raise_for(violation)
    return raw


def _check_structure(a: NCat) -> Violation | None:
    n = a.n
    if n < 1:
        return Violation("structure", (), (), f"n must be at least 1, got {n}")
    for name, table in (("cells", a.cells), ("src", a.src), ("tgt", a.tgt), ("idn", a.idn)):
        if len(table) != n + 1:
            return Violation("structure", (), (), f"{name} must have {n + 1} levels")
    for level, cells in enumerate(a.cells):
        if len(set(cells)) != len(cells):
            dup = sorted(c for c in set(cells) if cells.count(c) > 1)
            return Violation("structure", (level,), tuple(dup), "duplicate cell names")
    for level in range(1, n + 1):
        here, below = a.cell_sets[level], a.cell_sets[level - 1]
        for name, table in (("src", a.src[level]), ("tgt", a.tgt[level])):
            missing = sorted(here - table.keys())
            if missing:
                return Violation("structure", (level,), tuple(missing), f"{name} is not total")
            for cell, image in sorted(table.items()):
                if cell not in here or image not in below:
                    return Violation(
                        "structure", (level,), (cell, image), f"dangling {name} entry"
                    )
        missing = sorted(below - a.idn[level].keys())
        if missing:
            return Violation("structure", (level,), tuple(missing), "idn is not total")
        for cell, image in sorted(a.idn[level].items()):
            if cell not in below or image not in here:
                return Violation("structure", (level,), (cell, image), "dangling idn entry")
    for (j, i), table in sorted(a.comp.items()):
        if not 0 <= i < j <= n:
            return Violation("structure", (j, i), (), "composition table for an invalid level pair")
        cells = a.cell_sets[j]
        for (later, earlier), result in sorted(table.items()):
            if later not in cells or earlier not in cells or result not in cells:
                return Violation(
                    "structure", (j, i), (later, earlier, result), "dangling composition entry"
                )
    return None


def _check_globularity(a: NCat) -> Violation | None:
    for level in range(2, a.n + 1):
        src, tgt = a.src[level - 1], a.tgt[level - 1]
        for cell in a.cells[level]:
            s, t = a.src[level][cell], a.tgt[level][cell]
            if src[s] != src[t] or tgt[s] != tgt[t]:
                return Violation(
                    "globularity", (level, level - 1), (cell, s, t),
                    "source and target are not parallel",
                )
    return None


def _check_identity_boundaries(a: NCat) -> Violation | None:
    for level in range(1, a.n + 1):
        for cell in a.cells[level - 1]:
            unit = a.idn[level][cell]
            if a.src[level][unit] != cell or a.tgt[level][unit] != cell:
                return Violation(
                    "identity-boundary", (level,), (cell, unit),
                    "identity does not have the cell as source and target",
                )
    return None


def _check_composition_domains(a: NCat) -> Violation | None:
    for j in range(1, a.n + 1):
        for i in range(j):
            table = a.comp.get((j, i), {})
            for later, earlier in sorted(table):
                if not a.composable(j, i, later, earlier):
                    return Violation(
                        "composition-domain", (j, i), (later, earlier),
                        "composite defined on a non-composable pair",
                    )
            by_source: dict[str, list[str]] = defaultdict(list)
            for cell in a.cells[j]:
                by_source[a.bnd_src(cell, j, i)].append(cell)
            for earlier in a.cells[j]:
                for later in by_source.get(a.bnd_tgt(earlier, j, i), ()):
                    if (later, earlier) not in table:
                        return Violation(
                            "composition-domain", (j, i), (later, earlier),
                            "composite undefined on a composable pair",
                        )
    return None


def _check_composite_boundaries(a: NCat) -> Violation | None:
    for (j, i), table in sorted(a.comp.items()):
        for (later, earlier), result in sorted(table.items()):
            cells = (later, earlier, result)
            if a.bnd_src(result, j, i) != a.bnd_src(earlier, j, i):
                return Violation("composite-boundary", (j, i), cells, "wrong i-source")
            if a.bnd_tgt(result, j, i) != a.bnd_tgt(later, j, i):
                return Violation("composite-boundary", (j, i), cells, "wrong i-target")
            if i < j - 1:
                below = a.comp.get((j - 1, i), {})
                for name, table_below in (("source", a.src[j]), ("target", a.tgt[j])):
                    expected = below.get((table_below[later], table_below[earlier]))
                    if table_below[result] != expected:
                        return Violation(
                            "composite-boundary", (j, i), cells,
                            f"{name} is not the composite of the {name}s",
                        )
    return None


def _check_unit_laws(a: NCat) -> Violation | None:
    for j in range(1, a.n + 1):
        for i in range(j):
            table = a.comp.get((j, i), {})
            for cell in a.cells[j]:
                right = a.identity_tower(a.bnd_src(cell, j, i), i, j)
                left = a.identity_tower(a.bnd_tgt(cell, j, i), i, j)
                if table.get((cell, right)) != cell:
                    return Violation("unit", (j, i), (cell, right), "right unit law fails")
                if table.get((left, cell)) != cell:
                    return Violation("unit", (j, i), (left, cell), "left unit law fails")
    return None


def _check_associativity(a: NCat) -> Violation | None:
    for (j, i), table in sorted(a.comp.items()):
        by_earlier: dict[str, list[tuple[str, str]]] = defaultdict(list)
        for (later, earlier), result in table.items():
            by_earlier[earlier].append((later, result))
        for (g, f), gf in sorted(table.items()):
            for h, hg in sorted(by_earlier.get(g, ())):
                lhs = table.get((h, gf))
                rhs = table.get((hg, f))
                if lhs is None or lhs != rhs:
                    return Violation(
                        "associativity", (j, i), (h, g, f),
                        f"h(gf) = {lhs} but (hg)f = {rhs}",
                    )
    return None


def _check_identity_functoriality(a: NCat) -> Violation | None:
    for k in range(2, a.n + 1):
        j = k - 1
        unit = a.idn[k]
        for i in range(j):
            upper = a.comp.get((k, i), {})
            for (later, earlier), result in sorted(a.comp.get((j, i), {}).items()):
                composite = upper.get((unit[later], unit[earlier]))
                if composite != unit[result]:
                    return Violation(
                        "identity-functoriality", (k, i), (later, earlier, result),
                        "composite of identities is not the identity of the composite",
                    )
    return None


def _check_interchange(a: NCat) -> Violation | None:
    for k in range(2, a.n + 1):
        for j in range(1, k):
            along_j = a.comp.get((k, j), {})
            for i in range(j):
                along_i = a.comp.get((k, i), {})
                earlier_of: dict[str, list[str]] = defaultdict(list)
                for later, earlier in along_i:
                    earlier_of[later].append(earlier)
                for (alpha, beta), alpha_beta in sorted(along_j.items()):
                    for gamma in sorted(earlier_of.get(alpha, ())):
                        for delta in sorted(earlier_of.get(beta, ())):
                            gamma_delta = along_j.get((gamma, delta))
                            if gamma_delta is None:
                                continue
                            lhs = along_i.get((alpha_beta, gamma_delta))
                            rhs = along_j.get(
                                (along_i[(alpha, gamma)], along_i[(beta, delta)])
                            )
                            if lhs is None or lhs != rhs:
                                return Violation(
                                    "interchange", (k, j, i), (alpha, beta, gamma, delta),
                                    f"composites disagree: {lhs} vs {rhs}",
                                )
    return None


def check_functor(f: NFunctor) -> Violation | None:
    """Return the first preservation failure of ``f``, or None."""
    dom, cod = f.dom, f.cod
    if dom.n != cod.n or len(f.maps) != dom.n + 1:
        return Violation("structure", (), (), "functor levels do not match its ends")
    for level in range(dom.n + 1):
        mapping = f.maps[level]
        missing = sorted(dom.cell_sets[level] - mapping.keys())
        if missing:
            return Violation("structure", (level,), tuple(missing), "level map is not total")
        for cell, image in sorted(mapping.items()):
            if cell not in dom.cell_sets[level] or image not in cod.cell_sets[level]:
                return Violation("structure", (level,), (cell, image), "dangling map entry")
    for level in range(1, dom.n + 1):
        below, here = f.maps[level - 1], f.maps[level]
        for cell in dom.cells[level]:
            if cod.src[level][here[cell]] != below[dom.src[level][cell]]:
                return Violation(
                    "src-preservation", (level,), (cell, here[cell]),
                    "image of the source is not the source of the image",
                )
            if cod.tgt[level][here[cell]] != below[dom.tgt[level][cell]]:
                return Violation(
                    "tgt-preservation", (level,), (cell, here[cell]),
                    "image of the target is not the target of the image",
                )
        for cell in dom.cells[level - 1]:
            if here[dom.idn[level][cell]] != cod.idn[level][below[cell]]:
                return Violation(
                    "idn-preservation", (level,), (cell,), "identity is not sent to an identity"
                )
    for (j, i), table in sorted(dom.comp.items()):
        here = f.maps[j]
        for (later, earlier), result in sorted(table.items()):
            image = cod.compose_cells(j, i, here[later], here[earlier])
            if image != here[result]:
                return Violation(
                    "comp-preservation", (j, i), (later, earlier, result),
                    f"composite is sent to {here[result]}, expected {image}",
                )
    return None


def is_functor_valid(f: NFunctor) -> NFunctor:
    """Validate an n-functor.

    Returns:
        The same functor, once every preservation equation has been checked.

    Raises:
        StructuralError: If a level map is not total or points outside the codomain.
        LawViolation: For the first failing preservation equation.
    """
    violation = check_functor(f)
    if violation is not None:
        logger.debug(f"n-functor rejected: {violation}")
        _raise_for(violation)
    return f
