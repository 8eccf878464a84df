"""Named groups: every group of order at most 15 plus a few larger ones.

Each entry is rebuilt from a fixed recipe, so the same name always yields
the same table.  A directory named by ``CENTRALIZER_LAB_CATALOG`` adds
further entries, one per group file, keyed by file stem.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional

from .errors import GroupFileError, UnknownGroup, UnsupportedSpec
from .groupio import load_group_file
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    are_isomorphic,
    build_from_permutations,
    direct_product,
)
from .standard import cyclic, dihedral, standard_group, symmetric

CATALOG_ENV = "CENTRALIZER_LAB_CATALOG"

SL23_GENERATORS = ((3, 7, 2, 6, 1, 5, 0, 4), (0, 1, 3, 4, 2, 7, 5, 6))


def _renamed(G: GroupTable, name: str) -> GroupTable:
    return GroupTable(G.mul, G.inv, name, G.element_names)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    recipe: str
    order: int
    note: str
    builder: Callable[[], GroupTable] = field(repr=False, compare=False)
    permutations: Optional[tuple[int, tuple[tuple[int, ...], ...]]] = None
    alias_of: Optional[str] = None
    extra: bool = False  # outside the complete order <= 15 list

    def build(self) -> GroupTable:
        return _build_cached(self)


@lru_cache(maxsize=None)
def _build_cached(entry: CatalogEntry) -> GroupTable:
    G = _renamed(entry.builder(), entry.name)
    if G.order != entry.order:
        raise AssertionError(f"{entry.name}: recipe gave order {G.order}, expected {entry.order}")
    return G


def _product_of(*parts: Callable[[], GroupTable]) -> Callable[[], GroupTable]:
    def build():
        G = parts[0]()
        for p in parts[1:]:
            G = direct_product(G, p())
        return G

    return build


def _perm_entry(name, degree, gens, order, note, extra=False, alias_of=None) -> CatalogEntry:
    gens = tuple(tuple(g) for g in gens)
    recipe = f"permutations of degree {degree}: " + "; ".join(" ".join(map(str, g)) for g in gens)
    return CatalogEntry(
        name, recipe, order, note,
        lambda: build_from_permutations(degree, gens),
        (degree, gens), alias_of, extra,
    )


def _spec_entry(name, spec, order, note, extra=False) -> CatalogEntry:
    return CatalogEntry(name, spec, order, note, lambda: standard_group(spec), None, None, extra)


def _symmetric_gens(n: int) -> list[list[int]]:
    return [[*range(1, n), 0], [1, 0, *range(2, n)]]


def _builtin_entries() -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    cyclic_orders = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]
    for n in cyclic_orders:
        entries.append(_spec_entry(f"C{n}", f"cyclic({n})", n, f"cyclic group of order {n}"))

    def prod(name, recipe, order, note, *parts):
        entries.append(CatalogEntry(name, recipe, order, note, _product_of(*parts)))

    entries.append(_spec_entry("C2xC2", "elementary_abelian(2,2)", 4, "Klein four-group"))
    entries.append(_spec_entry("D6", "dihedral(6)", 6, "dihedral group of order 6, isomorphic to S3"))
    prod("C2xC4", "cyclic(2) x cyclic(4)", 8, "abelian of exponent 4", lambda: cyclic(2), lambda: cyclic(4))
    entries.append(_spec_entry("C2xC2xC2", "elementary_abelian(2,3)", 8, "elementary abelian of rank 3"))
    entries.append(_spec_entry("D8", "dihedral(8)", 8, "symmetries of the square"))
    entries.append(_spec_entry("Q8", "quaternion(8)", 8, "quaternion group"))
    prod("C3xC3", "cyclic(3) x cyclic(3)", 9, "elementary abelian of order 9", lambda: cyclic(3), lambda: cyclic(3))
    entries.append(_spec_entry("D10", "dihedral(10)", 10, "dihedral group of order 10"))
    prod("C2xC6", "cyclic(2) x cyclic(6)", 12, "abelian, non-cyclic of order 12", lambda: cyclic(2), lambda: cyclic(6))
    entries.append(_spec_entry("A4", "alternating(4)", 12, "even permutations of four points"))
    entries.append(_spec_entry("D12", "dihedral(12)", 12, "dihedral group of order 12"))
    entries.append(_spec_entry("Dic12", "generalized_quaternion(12)", 12, "dicyclic group of order 12"))
    entries.append(_spec_entry("D14", "dihedral(14)", 14, "dihedral group of order 14"))

    entries.append(_perm_entry("S4", 4, _symmetric_gens(4), 24, "symmetric group on four points", extra=True))
    entries.append(_perm_entry("S5", 5, _symmetric_gens(5), 120, "symmetric group on five points", extra=True))
    entries.append(_spec_entry("D16", "dihedral(16)", 16, "dihedral group of order 16", extra=True))
    entries.append(_spec_entry("Q16", "generalized_quaternion(16)", 16, "generalised quaternion group", extra=True))
    entries.append(_perm_entry("SL2_3", 8, SL23_GENERATORS, 24, "SL(2,3) acting on the 8 non-zero vectors of F3^2", extra=True))
    entries.append(_spec_entry("Heis3", "heisenberg_mod_p(3)", 27, "unitriangular 3x3 matrices over F3", extra=True))
    entries.append(CatalogEntry(
        "S3xS3", "symmetric(3) x symmetric(3)", 36, "direct square of S3",
        _product_of(lambda: symmetric(3), lambda: symmetric(3)), extra=True,
    ))
    entries.append(CatalogEntry(
        "D8xD8", "dihedral(8) x dihedral(8)", 64, "direct square of D8",
        _product_of(lambda: dihedral(8), lambda: dihedral(8)), extra=True,
    ))
    entries.append(_perm_entry("S3", 3, _symmetric_gens(3), 6, "symmetric group on three points", alias_of="D6"))
    entries.sort(key=lambda e: (e.extra, e.alias_of is not None, e.order, _sort_rank(e.name)))
    return entries


def _sort_rank(name: str) -> tuple:
    # cyclic first within an order, then by name
    return (not name.startswith("C") or "x" in name, name)


class Catalog:
    """Ordered name -> entry mapping."""

    def __init__(self, entries: list[CatalogEntry]):
        self._entries: dict[str, CatalogEntry] = {}
        for e in entries:
            if e.name in self._entries:
                raise GroupFileError(f"duplicate catalog name {e.name!r}")
            self._entries[e.name] = e

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def entry(self, name: str) -> CatalogEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownGroup(f"no catalog group named {name!r}") from None

    def get(self, name: str) -> GroupTable:
        return self.entry(name).build()

    def entries(self, *, include_aliases: bool = False) -> list[CatalogEntry]:
        return [e for e in self._entries.values() if include_aliases or e.alias_of is None]

    def groups(self, max_order: Optional[int] = None) -> list[GroupTable]:
        """Canonical (non-alias) groups, optionally up to a given order."""
        return [
            e.build() for e in self.entries()
            if max_order is None or e.order <= max_order
        ]


def _file_entries(directory: Path) -> list[CatalogEntry]:
    entries = []
    for path in sorted(directory.iterdir()):
        if not path.is_file() or path.name.startswith("."):
            continue
        G = load_group_file(path)
        entries.append(CatalogEntry(
            path.stem, f"file {path.name}", G.order, f"loaded from {path}",
            (lambda p=path: load_group_file(p)), extra=True,
        ))
    return entries


def load_catalog(env: Optional[dict] = None) -> Catalog:
    env = os.environ if env is None else env
    entries = _builtin_entries()
    extra_dir = env.get(CATALOG_ENV)
    if extra_dir:
        directory = Path(extra_dir)
        if not directory.is_dir():
            raise GroupFileError(f"{CATALOG_ENV}={extra_dir} is not a directory")
        entries += _file_entries(directory)
    return Catalog(entries)


_default: Optional[Catalog] = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = load_catalog()
    return _default


def resolve_group(ref: str, *, strict: bool = False, cap: int = DEFAULT_ORDER_CAP, catalog: Optional[Catalog] = None) -> GroupTable:
    """Catalog name, group file, family spec like ``dihedral(8)``, or ``AxB`` product of those."""
    catalog = catalog or default_catalog()
    if ref in catalog:
        return catalog.get(ref)
    path = Path(ref)
    if path.is_file():
        return load_group_file(path, strict=strict, cap=cap)
    if "(" in ref:
        try:
            return standard_group(ref, cap)
        except UnsupportedSpec:
            pass
    parts = ref.split("x")
    if len(parts) > 1 and all(p in catalog for p in parts):
        G = catalog.get(parts[0])
        for p in parts[1:]:
            G = direct_product(G, catalog.get(p), cap)
        return _renamed(G, ref)
    raise UnknownGroup(f"cannot resolve group {ref!r}")


def _invariant(G: GroupTable) -> tuple:
    from .centralisers import centre

    return (G.order, tuple(sorted(G.element_orders)), G.is_abelian, centre(G).cardinality)


def non_isomorphism_report(catalog: Catalog) -> list[tuple[str, str]]:
    """Pairs of canonical catalog entries that turn out to be isomorphic (expected: none)."""
    groups = [(e.name, e.build()) for e in catalog.entries()]
    clashes = []
    for i, (a, G) in enumerate(groups):
        for b, H in groups[i + 1:]:
            if _invariant(G) == _invariant(H) and are_isomorphic(G, H):
                clashes.append((a, b))
    return clashes


def check_aliases(catalog: Catalog) -> None:
    for e in catalog.entries(include_aliases=True):
        if e.alias_of is not None and not are_isomorphic(e.build(), catalog.get(e.alias_of)):
            raise AssertionError(f"{e.name} is not isomorphic to {e.alias_of}")

