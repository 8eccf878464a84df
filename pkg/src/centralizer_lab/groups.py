"""Finite groups as indexed multiplication tables.

Every group is stored as an ``n x n`` table over element indices ``0..n-1``
with the identity fixed at index 0.  Subsets of a group are
:class:`ElementSet` values backed by a Python ``int`` used as a bitset.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    InvalidPermutation,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
)

DEFAULT_ORDER_CAP = 10000
# tables up to this order get the full n^3 associativity check
EXHAUSTIVE_ASSOC_LIMIT = 256


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the set bit positions of ``bits`` in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_from_bool_row(row: np.ndarray) -> int:
    packed = np.packbits(row.astype(bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


@dataclass(frozen=True)
class ElementSet:
    """A subset of ``{0, ..., owner_order - 1}``."""

    owner_order: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.owner_order:
            raise ValueError("member index outside the owning group")

    @classmethod
    def of(cls, owner_order: int, members: Iterable[int]) -> "ElementSet":
        bits = 0
        for m in members:
            if not 0 <= m < owner_order:
                raise ValueError(f"element {m} outside group of order {owner_order}")
            bits |= 1 << m
        return cls(owner_order, bits)

    @classmethod
    def full(cls, owner_order: int) -> "ElementSet":
        return cls(owner_order, (1 << owner_order) - 1)

    @classmethod
    def empty(cls, owner_order: int) -> "ElementSet":
        return cls(owner_order, 0)

    @cached_property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, g: int) -> bool:
        return 0 <= g < self.owner_order and bool(self.bits >> g & 1)

    def members(self) -> tuple[int, ...]:
        return tuple(self)

    def _check(self, other: "ElementSet") -> None:
        if other.owner_order != self.owner_order:
            raise ValueError("element sets belong to groups of different orders")

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.owner_order, self.bits & other.bits)

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.owner_order, self.bits | other.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.owner_order, self.bits & ~other.bits)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.bits != other.bits

    def __ge__(self, other: "ElementSet") -> bool:
        return other <= self

    def __gt__(self, other: "ElementSet") -> bool:
        return other < self

    def __repr__(self) -> str:
        return f"ElementSet({self.owner_order}, {list(self)})"


class GroupTable:
    """A finite group given by its multiplication table.

    Instances are treated as immutable.  Use the module-level builders
    rather than calling the constructor directly; the constructor trusts
    its input.
    """

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        inv: Sequence[int],
        name: Optional[str] = None,
        element_names: Optional[Sequence[str]] = None,
    ):
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in row) for row in mul)
        self.inv: tuple[int, ...] = tuple(int(x) for x in inv)
        self.name = name
        n = len(self.mul)
        if element_names is None:
            element_names = [str(i) for i in range(n)]
        if len(element_names) != n:
            raise DimensionMismatch("element_names length differs from the order")
        self.element_names: tuple[str, ...] = tuple(element_names)
        self._memo: dict = {}

    def memo(self, key, compute):
        """Per-instance cache for derived data computed by other modules."""
        try:
            return self._memo[key]
        except KeyError:
            value = self._memo[key] = compute()
            return value

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.mul == other.mul and self.element_names == other.element_names

    def __hash__(self) -> int:
        return self.memo("hash", lambda: hash(self.mul))

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"<GroupTable {label} order={self.order}>"

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.mul, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def is_abelian(self) -> bool:
        a = self.array
        return bool((a == a.T).all())

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mul[x][g]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element(self, name: str) -> int:
        try:
            return self.element_names.index(name)
        except ValueError:
            raise KeyError(f"no element named {name!r}") from None

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        x = 0
        for _ in range(k):
            x = self.mul[x][g]
        return x

    def commutator(self, a: int, b: int) -> int:
        """``[a, b] = a^-1 b^-1 a b``."""
        m, inv = self.mul, self.inv
        return m[m[m[inv[a]][inv[b]]][a]][b]

    def all_elements(self) -> ElementSet:
        return ElementSet.full(self.order)

    def elements(self, members: Iterable[int]) -> ElementSet:
        return ElementSet.of(self.order, members)


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism given by the image of every source element."""

    source: GroupTable
    target: GroupTable
    images: tuple[int, ...]

    def __call__(self, g: int) -> int:
        return self.images[g]

    def is_homomorphism(self) -> bool:
        sm, tm, im = self.source.mul, self.target.mul, self.images
        if im[0] != 0:
            return False
        n = self.source.order
        return all(im[sm[a][b]] == tm[im[a]][im[b]] for a in range(n) for b in range(n))


# validation


def _check_associative(arr: np.ndarray, strict: bool, seed: int) -> Optional[tuple[int, int, int]]:
    n = arr.shape[0]
    if strict or n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            left = arr[arr[a]]  # (a*b)*c indexed [b, c]
            right = arr[a][arr]  # a*(b*c) indexed [b, c]
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = bad[0]
                return a, int(b), int(c)
        return None
    rng = np.random.default_rng(seed)
    samples = 10 * n * n
    chunk = 1 << 20
    for start in range(0, samples, chunk):
        size = min(chunk, samples - start)
        a, b, c = rng.integers(0, n, size=(3, size))
        bad = np.flatnonzero(arr[arr[a, b], c] != arr[a, arr[b, c]])
        if len(bad):
            i = bad[0]
            return int(a[i]), int(b[i]), int(c[i])
    return None


def build_from_table(
    n: int,
    raw: Sequence[Sequence[int]],
    name: Optional[str] = None,
    *,
    element_names: Optional[Sequence[str]] = None,
    strict: bool = False,
    seed: int = 0,
) -> GroupTable:
    """Validate a Cayley table and return it with the identity moved to index 0.

    Associativity is checked exhaustively up to order 256 (or always with
    ``strict``); larger tables are checked on ``10 n^2`` random triples.
    """
    if n < 1:
        raise DimensionMismatch("order must be positive")
    if len(raw) != n or any(len(row) != n for row in raw):
        raise DimensionMismatch(f"expected a {n}x{n} table")
    arr = np.asarray(raw, dtype=np.int64)
    if arr.min() < 0 or arr.max() >= n:
        raise NotAGroup("table entry outside [0, n)")
    ident = np.arange(n)
    candidates = [e for e in range(n) if (arr[e] == ident).all() and (arr[:, e] == ident).all()]
    if not candidates:
        raise NotAGroup("no identity element")
    e = candidates[0]
    inv = np.empty(n, dtype=np.int64)
    for g in range(n):
        hits = np.flatnonzero(arr[g] == e)
        hits = [h for h in hits if arr[h, g] == e]
        if not hits:
            raise NotAGroup(f"element {g} has no inverse")
        inv[g] = hits[0]
    bad = _check_associative(arr, strict, seed)
    if bad is not None:
        raise NotAGroup("associativity fails at (%d, %d, %d)" % bad)
    names = list(element_names) if element_names is not None else [str(i) for i in range(n)]
    if len(names) != n:
        raise DimensionMismatch("element_names length differs from the order")
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0  # perm is its own inverse
        arr = perm[arr[np.ix_(perm, perm)]]
        inv = perm[inv[perm]]
        names = [names[perm[i]] for i in range(n)]
    return GroupTable(arr.tolist(), inv.tolist(), name, names)


# permutation groups


def cycle_notation(images: Sequence[int]) -> str:
    """Comma-separated cycle notation without spaces, e.g. ``(0,1,2)(3,4)``."""
    seen = [False] * len(images)
    parts = []
    for start in range(len(images)):
        if seen[start] or images[start] == start:
            continue
        cyc, x = [], start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = images[x]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _check_permutation(degree: int, images: Sequence[int]) -> tuple[int, ...]:
    images = tuple(int(x) for x in images)
    if len(images) != degree or sorted(images) != list(range(degree)):
        raise InvalidPermutation(f"{list(images)} is not a permutation of 0..{degree - 1}")
    return images


def enumerate_permutation_group(
    degree: int, generators: Sequence[Sequence[int]], cap: int = DEFAULT_ORDER_CAP
) -> list[tuple[int, ...]]:
    """Breadth-first closure from the identity; returns elements in discovery order."""
    gens = [_check_permutation(degree, g) for g in generators]
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            # x then g
            y = tuple(g[i] for i in x)
            if y not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(f"permutation group exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    return elements


def build_from_permutations(
    degree: int,
    generators: Sequence[Sequence[int]],
    name: Optional[str] = None,
    cap: int = DEFAULT_ORDER_CAP,
) -> GroupTable:
    """The group generated by ``generators``; products compose left to right."""
    if degree < 1:
        raise InvalidPermutation("degree must be positive")
    elements = enumerate_permutation_group(degree, generators, cap)
    n = len(elements)
    perms = np.asarray(elements, dtype=np.int64).reshape(n, degree)
    index = {p.tobytes(): i for i, p in enumerate(perms)}
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        composed = perms[:, perms[a]]  # row b holds b[a[i]], i.e. a then b
        mul[a] = [index[row.tobytes()] for row in composed]
    inv = np.argmin(mul, axis=1)
    names = [cycle_notation(p) for p in elements]
    return GroupTable(mul.tolist(), inv.tolist(), name, names)


# constructions


def direct_product(G: GroupTable, H: GroupTable, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Componentwise product; element ``(g, h)`` has index ``g * |H| + h``."""
    n, m = G.order, H.order
    if n * m > cap:
        raise OrderCapExceeded(f"|G||H| = {n * m} exceeds order cap {cap}")
    a, b = G.array, H.array
    mul = (a[:, None, :, None] * m + b[None, :, None, :]).reshape(n * m, n * m)
    inv = [G.inv[g] * m + H.inv[h] for g in range(n) for h in range(m)]
    names = [f"({gn},{hn})" for gn in G.element_names for hn in H.element_names]
    label = f"{G.name}x{H.name}" if G.name and H.name else None
    return GroupTable(mul.tolist(), inv, label, names)


def subgroup_closure(G: GroupTable, gens: ElementSet) -> ElementSet:
    """Smallest subgroup of ``G`` containing ``gens``."""
    generators = list(gens)
    bits = 1
    frontier = [0]
    mul = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            row = mul[x]
            for g in generators:
                y = row[g]
                if not bits >> y & 1:
                    bits |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return ElementSet(G.order, bits)


def is_subgroup(G: GroupTable, S: ElementSet) -> bool:
    if 0 not in S:
        return False
    members = list(S)
    mul, inv = G.mul, G.inv
    return all(inv[a] in S for a in members) and all(
        mul[a][b] in S for a in members for b in members
    )


def subgroup_as_group(G: GroupTable, S: ElementSet) -> tuple[GroupTable, GroupMap]:
    """The subgroup ``S`` as a group in its own right, with its embedding."""
    if S.owner_order != G.order or not is_subgroup(G, S):
        raise NotASubgroup("set is not closed under multiplication and inversion")
    members = list(S)
    pos = {g: i for i, g in enumerate(members)}
    mul = [[pos[G.mul[a][b]] for b in members] for a in members]
    inv = [pos[G.inv[a]] for a in members]
    names = [G.element_names[g] for g in members]
    H = GroupTable(mul, inv, None, names)
    return H, GroupMap(H, G, tuple(members))


def is_normal(G: GroupTable, N: ElementSet) -> bool:
    mul, inv = G.mul, G.inv
    members = list(N)
    return all(mul[mul[g][n]][inv[g]] in N for g in range(G.order) for n in members)


def quotient_by_normal(G: GroupTable, N: ElementSet) -> tuple[GroupTable, GroupMap]:
    """``G/N`` with cosets numbered by their least element, plus the projection."""
    if N.owner_order != G.order or not is_subgroup(G, N):
        raise NotASubgroup("N is not a subgroup")
    if not is_normal(G, N):
        raise NotNormal("N is not normal in G")
    members = list(N)
    coset_of = [-1] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] < 0:
            k = len(reps)
            reps.append(g)
            for n in members:
                coset_of[G.mul[g][n]] = k
    mul = [[coset_of[G.mul[a][b]] for b in reps] for a in reps]
    inv = [coset_of[G.inv[a]] for a in reps]
    names = [G.element_names[r] + "N" if r else "N" for r in reps]
    label = f"{G.name}/N" if G.name else None
    Q = GroupTable(mul, inv, label, names)
    return Q, GroupMap(G, Q, tuple(coset_of))


# isomorphism testing for small groups


def small_generating_set(G: GroupTable) -> list[int]:
    """Greedy generating set, preferring elements of large order."""
    order = G.element_orders
    candidates = sorted(range(1, G.order), key=lambda g: (-order[g], g))
    gens: list[int] = []
    span = ElementSet(G.order, 1)
    for g in candidates:
        if g not in span:
            gens.append(g)
            span = subgroup_closure(G, G.elements(gens))
            if span.cardinality == G.order:
                break
    return gens


def find_isomorphism(G: GroupTable, H: GroupTable) -> Optional[tuple[int, ...]]:
    """Return ``images`` of an isomorphism ``G -> H`` or ``None``.

    Backtracks over images of a small generating set of ``G`` and extends
    along the Cayley graph, so it is only practical for modest orders.
    """
    if G.order != H.order:
        return None
    if sorted(G.element_orders) != sorted(H.element_orders):
        return None
    if G.is_abelian != H.is_abelian:
        return None
    gens = small_generating_set(G)
    g_order, h_order = G.element_orders, H.element_orders
    options = [[h for h in range(H.order) if h_order[h] == g_order[g]] for g in gens]

    def extend(assignment: list[int]) -> Optional[tuple[int, ...]]:
        phi = [-1] * G.order
        phi[0] = 0
        used = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for g, img in zip(gens, assignment):
                y = G.mul[x][g]
                target = H.mul[phi[x]][img]
                if phi[y] < 0:
                    if target in used:
                        return None
                    phi[y] = target
                    used.add(target)
                    queue.append(y)
                elif phi[y] != target:
                    return None
        return tuple(phi)

    def search(i: int, assignment: list[int]) -> Optional[tuple[int, ...]]:
        if i == len(gens):
            return extend(assignment)
        for h in options[i]:
            if h in assignment:
                continue
            assignment.append(h)
            found = search(i + 1, assignment)
            assignment.pop()
            if found is not None:
                return found
        return None

    return search(0, [])


def are_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    return find_isomorphism(G, H) is not None
