"""Reading and writing NCat and NFunctor files.

Both formats are JSON documents checked by pydantic models. Written files use
sorted keys and a trailing newline, so identical values give identical bytes.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ncat_engine.ncat import NCat, NFunctor, is_plain_cell_name, make_ncat

logger = logging.getLogger(__name__)


class FileFormatError(Exception):
    """Raised when a file is not valid JSON or does not match the expected layout."""

    pass


class NCatFile(BaseModel):
    """On-disk layout of an n-category."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=1, description="Top level")
    cells: list[list[str]] = Field(..., description="Cell names per level 0..n")
    src: list[dict[str, str]] = Field(..., description="Source maps for levels 1..n")
    tgt: list[dict[str, str]] = Field(..., description="Target maps for levels 1..n")
    idn: list[dict[str, str]] = Field(..., description="Identity maps for levels 1..n")
    comp: dict[str, dict[str, str]] = Field(
        default_factory=dict, description="'j,i' -> {'later|earlier': result}"
    )


class NFunctorFile(BaseModel):
    """On-disk layout of an n-functor; ends are inline or paths relative to the file."""

    model_config = ConfigDict(extra="forbid")

    dom: NCatFile | str
    cod: NCatFile | str
    maps: list[dict[str, str]] = Field(..., description="Cell maps per level 0..n")


def split_pair_key(key: str) -> tuple[str, str]:
    """Split ``later|earlier`` on the only bar outside brackets.

    Raises:
        FileFormatError: If there is not exactly one such bar.
    """
    depth = 0
    bars: list[int] = []
    for index, char in enumerate(key):
        if char in "([":
            depth += 1
        elif char in ")]":
            depth -= 1
        elif char == "|" and depth == 0:
            bars.append(index)
    if len(bars) != 1:
        raise FileFormatError(f"pair key {key!r} must contain exactly one top-level '|'")
    return key[: bars[0]], key[bars[0] + 1 :]


def _parse_levels(key: str) -> tuple[int, int]:
    try:
        j, i = (int(part) for part in key.split(","))
    except ValueError as e:
        raise FileFormatError(f"composition key {key!r} is not of the form 'j,i'") from e
    return j, i


def ncat_from_model(model: NCatFile) -> NCat:
    """Convert a parsed file into an (unvalidated) NCat.

    Raises:
        FileFormatError: If a table list has the wrong length or a cell name is not plain.
    """
    n = model.n
    if len(model.cells) != n + 1:
        raise FileFormatError(f"cells must list {n + 1} levels, got {len(model.cells)}")
    for level, names in enumerate(model.cells):
        for name in names:
            if not is_plain_cell_name(name):
                raise FileFormatError(
                    f"cell {name!r} on level {level} has unbalanced brackets or a bare '|'"
                )
    for name in ("src", "tgt", "idn"):
        tables = getattr(model, name)
        if len(tables) != n:
            raise FileFormatError(f"{name} must list {n} levels, got {len(tables)}")
    comp: dict[tuple[int, int], dict[tuple[str, str], str]] = {}
    for key, table in model.comp.items():
        comp[_parse_levels(key)] = {
            split_pair_key(pair): result for pair, result in table.items()
        }
    return make_ncat(
        n,
        model.cells,
        [{}] + model.src,
        [{}] + model.tgt,
        [{}] + model.idn,
        comp,
    )


def _format_errors(source: str, error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<document>"
        lines.append(f"{source}: {location}: {item['msg']}")
    return "\n".join(lines)


def loads_ncat(text: str, source: str = "<string>") -> NCat:
    """Parse an NCat document.

    Raises:
        FileFormatError: On invalid JSON (with line and column) or a schema mismatch.
    """
    try:
        model = NCatFile.model_validate_json(text)
    except ValidationError as e:
        raise FileFormatError(_format_errors(source, e)) from e
    return ncat_from_model(model)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise FileFormatError(f"cannot read {path}: {e}") from e


def read_ncat(path: str | Path) -> NCat:
    """Read an NCat file."""
    path = Path(path)
    logger.debug(f"reading n-category from {path}")
    return loads_ncat(_read_text(path), str(path))


def _resolve_end(end: NCatFile | str, base: Path) -> NCat:
    if isinstance(end, NCatFile):
        return ncat_from_model(end)
    return read_ncat(base / end)


def loads_functor(text: str, base: str | Path = ".", source: str = "<string>") -> NFunctor:
    """Parse an NFunctor document; path-valued ends are resolved against ``base``.

    Raises:
        FileFormatError: On invalid JSON, a schema mismatch or an unreadable end.
    """
    try:
        model = NFunctorFile.model_validate_json(text)
    except ValidationError as e:
        raise FileFormatError(_format_errors(source, e)) from e
    base_dir = Path(base)
    dom = _resolve_end(model.dom, base_dir)
    cod = _resolve_end(model.cod, base_dir)
    if len(model.maps) != dom.n + 1:
        raise FileFormatError(f"{source}: maps must list {dom.n + 1} levels")
    return NFunctor(dom=dom, cod=cod, maps=tuple(dict(m) for m in model.maps))


def read_functor(path: str | Path) -> NFunctor:
    """Read an NFunctor file."""
    path = Path(path)
    logger.debug(f"reading n-functor from {path}")
    return loads_functor(_read_text(path), path.parent, str(path))


def _render(data: object) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def dumps_ncat(category: NCat) -> str:
    return _render(category.to_dict())


def dumps_functor(f: NFunctor) -> str:
    """Serialize a functor with both ends inline."""
    return _render(f.to_dict())


def write_ncat(path: str | Path, category: NCat) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_ncat(category), encoding="utf-8")
    return path


def write_functor(path: str | Path, f: NFunctor) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_functor(f), encoding="utf-8")
    return path


def write_json(path: str | Path, data: object) -> Path:
    """Write any JSON-ready value with the same stable layout as the model files."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_render(data), encoding="utf-8")
    return path
