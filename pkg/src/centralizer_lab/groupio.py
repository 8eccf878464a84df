"""Text formats for groups.

Cayley-table file::

    order n
    names a b c ...        (optional)
    <n lines of n 0-based indices>

Permutation-generator file::

    degree d
    <one generator per line: d 0-based images>

Lines starting with ``#`` are comments.  The writers produce text that the
readers load back to an identical table.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence

from .errors import GroupFileError
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    build_from_permutations,
    build_from_table,
    small_generating_set,
)


def _content_lines(text: str) -> list[str]:
    lines = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    return lines


def _ints(line: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GroupFileError(f"line {lineno}: expected integers, got {line!r}") from None


def _header(lines: list[str], keyword: str) -> int:
    if not lines:
        raise GroupFileError("empty group file")
    parts = lines[0].split()
    if len(parts) != 2 or parts[0] != keyword:
        raise GroupFileError(f"first line must be '{keyword} <n>'")
    try:
        value = int(parts[1])
    except ValueError:
        raise GroupFileError(f"bad {keyword}: {parts[1]!r}") from None
    if value < 1:
        raise GroupFileError(f"{keyword} must be positive")
    return value


def read_cayley(text: str, name: Optional[str] = None, *, strict: bool = False) -> GroupTable:
    lines = _content_lines(text)
    n = _header(lines, "order")
    body = lines[1:]
    names = None
    if body and body[0].split()[0] == "names":
        names = body[0].split()[1:]
        if len(names) != n:
            raise GroupFileError(f"names line lists {len(names)} names for order {n}")
        body = body[1:]
    if len(body) != n:
        raise GroupFileError(f"expected {n} table rows, found {len(body)}")
    raw = [_ints(line, i + 1) for i, line in enumerate(body)]
    return build_from_table(n, raw, name, element_names=names, strict=strict)


def write_cayley(G: GroupTable, with_names: bool = True) -> str:
    out = [f"order {G.order}"]
    if with_names and G.element_names != tuple(str(i) for i in range(G.order)):
        out.append("names " + " ".join(G.element_names))
    out.extend(" ".join(map(str, row)) for row in G.mul)
    return "\n".join(out) + "\n"


def read_permutations(
    text: str, name: Optional[str] = None, cap: int = DEFAULT_ORDER_CAP
) -> GroupTable:
    lines = _content_lines(text)
    degree = _header(lines, "degree")
    gens = [_ints(line, i + 1) for i, line in enumerate(lines[1:])]
    return build_from_permutations(degree, gens, name, cap)


def write_permutations(degree: int, generators: Sequence[Sequence[int]]) -> str:
    out = [f"degree {degree}"]
    out.extend(" ".join(map(str, g)) for g in generators)
    return "\n".join(out) + "\n"


def regular_generators(G: GroupTable) -> list[list[int]]:
    """Right-regular permutations of a small generating set of ``G``."""
    return [[G.mul[x][g] for x in range(G.order)] for g in small_generating_set(G)]


def detect_format(text: str) -> str:
    lines = _content_lines(text)
    if not lines:
        raise GroupFileError("empty group file")
    word = lines[0].split()[0]
    if word == "order":
        return "cayley"
    if word == "degree":
        return "perm"
    raise GroupFileError("group file must start with 'order' or 'degree'")


def load_group_file(path: str | Path, *, strict: bool = False, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    path = Path(path)
    text = path.read_text()
    if detect_format(text) == "cayley":
        return read_cayley(text, path.stem, strict=strict)
    return read_permutations(text, path.stem, cap)
