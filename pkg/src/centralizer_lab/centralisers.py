"""Centralisers, the centraliser lattice and centraliser dimension.

Every centraliser of a finite group is an intersection of single-element
centralisers, so the lattice is built by closing ``{G}`` under
intersection with the sets ``C(g)``.  Chain lengths count strict
inclusions, not nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionViolated, TooLarge
from .groups import ElementSet, GroupTable, bits_from_bool_row, iter_bits

ORACLE_MAX_ORDER = 24


def centraliser_rows(G: GroupTable) -> tuple[int, ...]:
    """Bitmask of ``C(g)`` for every element ``g``."""

    def compute():
        a = G.array
        commute = a == a.T
        return tuple(bits_from_bool_row(row) for row in commute)

    return G.memo("centraliser_rows", compute)


def _centraliser_bits(G: GroupTable, members) -> int:
    rows = centraliser_rows(G)
    bits = (1 << G.order) - 1
    for s in members:
        bits &= rows[s]
    return bits


def centraliser(G: GroupTable, S: ElementSet) -> ElementSet:
    """``C(S)``: elements commuting with every member of ``S``; ``C(∅) = G``."""
    return ElementSet(G.order, _centraliser_bits(G, S))


def centre(G: GroupTable) -> ElementSet:
    return G.memo("centre", lambda: ElementSet(G.order, _centraliser_bits(G, range(G.order))))


def z_indicator(G: GroupTable) -> int:
    """0 when the centre is trivial (including for the trivial group), else 2."""
    return 0 if centre(G).cardinality == 1 else 2


@dataclass(frozen=True)
class CentraliserLattice:
    """Distinct centralisers of ``group`` ordered by inclusion.

    ``nodes[0]`` is ``G`` and ``nodes[-1]`` is ``Z(G)``.  ``hasse_edges``
    holds ``(upper, lower)`` covering pairs as node indices.
    """

    group: GroupTable
    nodes: tuple[ElementSet, ...]
    hasse_edges: tuple[tuple[int, int], ...]
    height: int
    depth: tuple[int, ...]  # longest path from the top
    down: tuple[int, ...]  # longest path to the bottom

    def index_of(self, s: ElementSet) -> int:
        return self._index[s.bits]

    def __contains__(self, s: ElementSet) -> bool:
        return s.bits in self._index

    @property
    def _index(self) -> dict[int, int]:
        return self.group.memo("lattice_index", lambda: {n.bits: i for i, n in enumerate(self.nodes)})

    def to_json(self, with_names: bool = False) -> str:
        payload = {
            "group": self.group.name,
            "order": self.group.order,
            "height": self.height,
            "nodes": [list(n) for n in self.nodes],
            "edges": [list(e) for e in self.hasse_edges],
        }
        if with_names:
            names = self.group.element_names
            payload["node_names"] = [[names[g] for g in n] for n in self.nodes]
        return json.dumps(payload, sort_keys=True)

    def to_dot(self, with_elements: bool = False) -> str:
        names = self.group.element_names
        lines = ["digraph centralisers {", "  rankdir=TB;"]
        for i, node in enumerate(self.nodes):
            label = f"|C|={node.cardinality}"
            if with_elements:
                label += "\\n{" + ",".join(names[g] for g in node) + "}"
            lines.append(f'  n{i} [label="{label}"];')
        for upper, lower in self.hasse_edges:
            lines.append(f"  n{upper} -> n{lower};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _build_lattice(G: GroupTable) -> CentraliserLattice:
    n = G.order
    full = (1 << n) - 1
    generators = sorted(set(centraliser_rows(G)) - {full})
    found = {full}
    frontier = [full]
    while frontier:
        nxt = []
        for x in frontier:
            for r in generators:
                y = x & r
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt

    ordered = sorted(found, key=lambda b: (-b.bit_count(), tuple(iter_bits(b))))
    m = len(ordered)
    edges = []
    for v in range(1, m):
        vb = ordered[v]
        uppers = [u for u in range(v) if ordered[u] & vb == vb]
        uppers.sort(key=lambda u: ordered[u].bit_count())
        covers: list[int] = []
        for u in uppers:
            ub = ordered[u]
            if not any(ordered[k] & ub == ordered[k] for k in covers):
                covers.append(u)
        edges.extend((u, v) for u in covers)
    edges.sort()

    # nodes are in topological order (descending size)
    depth = [0] * m
    for u, v in edges:
        depth[v] = max(depth[v], depth[u] + 1)
    down = [0] * m
    for u, v in sorted(edges, key=lambda e: -e[0]):
        down[u] = max(down[u], down[v] + 1)
    nodes = tuple(ElementSet(n, b) for b in ordered)
    return CentraliserLattice(G, nodes, tuple(edges), depth[-1], tuple(depth), tuple(down))


def lattice(G: GroupTable) -> CentraliserLattice:
    return G.memo("lattice", lambda: _build_lattice(G))


def cdim(G: GroupTable) -> int:
    """Centraliser dimension: the height of the centraliser lattice."""
    return lattice(G).height


@dataclass(frozen=True)
class CentraliserChain:
    """``sets[0] = G > sets[1] = C(a1) > ... > sets[-1] = Z(G)``."""

    generators: tuple[int, ...]
    sets: tuple[ElementSet, ...]

    def __len__(self) -> int:
        return len(self.generators)


def witness_chain(G: GroupTable) -> CentraliserChain:
    """A maximal chain built by adjoining one non-central element at a time.

    At each step the smallest element index is taken whose centraliser
    strictly cuts the current set while leaving a continuation of maximal
    length.
    """
    lat = lattice(G)
    rows = centraliser_rows(G)
    current = lat.nodes[0].bits
    index = {node.bits: i for i, node in enumerate(lat.nodes)}
    remaining = lat.height
    gens: list[int] = []
    sets = [lat.nodes[0]]
    while remaining:
        for g in range(G.order):
            nxt = current & rows[g]
            if nxt != current and lat.down[index[nxt]] == remaining - 1:
                break
        else:  # pragma: no cover - excluded by the single-element extension argument
            raise AssertionError("no singleton extension keeps a maximal chain")
        gens.append(g)
        current = nxt
        sets.append(ElementSet(G.order, nxt))
        remaining -= 1
    return CentraliserChain(tuple(gens), tuple(sets))


@dataclass(frozen=True)
class DimProfile:
    """Centraliser dimension together with the centre indicator ``z``."""

    cdim: int
    z: int

    def __post_init__(self):
        if self.cdim < 0 or self.z not in (0, 2):
            raise ValueError("cdim must be >= 0 and z must be 0 or 2")


def profile(G: GroupTable) -> DimProfile:
    return DimProfile(cdim(G), z_indicator(G))


def free_product_cdim(p1: DimProfile, p2: DimProfile) -> int:
    """Centraliser dimension of the free product of two groups with these profiles."""
    return max(p1.cdim + p1.z, p2.cdim + p2.z)


def amalgam_over_centre_cdim(p1: DimProfile, p2: DimProfile) -> int:
    """Centraliser dimension of ``G1 *_{Z1=Z2} G2``.

    Only defined for non-abelian factors with non-trivial (isomorphic)
    centres; anything else is rejected rather than extrapolated.
    """
    for p in (p1, p2):
        if p.z != 2:
            raise PreconditionViolated("amalgamation needs factors with non-trivial centre")
        if p.cdim < 2:
            raise PreconditionViolated("amalgamation needs non-abelian factors")
    return max(p1.cdim, p2.cdim)


def cdim_bruteforce_oracle(G: GroupTable) -> int:
    """Centraliser dimension by enumerating ``C(T)`` for all ``2^|G|`` subsets ``T``.

    Shares no code with the lattice engine: commutation masks come straight
    from the table and the longest chain is found by exhaustive search over
    the distinct sets.
    """
    n = G.order
    if n > ORACLE_MAX_ORDER:
        raise TooLarge(f"oracle limited to order <= {ORACLE_MAX_ORDER}, got {n}")
    table = np.asarray(G.mul, dtype=np.int64)
    weights = np.uint32(1) << np.arange(n, dtype=np.uint32)
    commutes_with = [
        np.uint32(weights[table[:, s] == table[s, :]].sum()) for s in range(n)
    ]
    subsets = np.empty(1 << n, dtype=np.uint32)
    subsets[0] = (1 << n) - 1
    for s in range(n):
        half = 1 << s
        np.bitwise_and(subsets[:half], commutes_with[s], out=subsets[half:2 * half])
    distinct = [int(x) for x in np.unique(subsets)]

    memo: dict[int, int] = {}

    def longest(v: int) -> int:
        if v not in memo:
            best = 0
            for w in distinct:
                if w != v and w & v == w:
                    best = max(best, 1 + longest(w))
            memo[v] = best
        return memo[v]

    return longest((1 << n) - 1)


def is_abelian_set(G: GroupTable, S: ElementSet) -> bool:
    rows = centraliser_rows(G)
    return all(S.bits & ~rows[s] == 0 for s in S)

