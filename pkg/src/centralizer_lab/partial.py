"""Partial models: a subset of a group with the induced partial multiplication."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import EmptyCarrier
from .groups import ElementSet, GroupTable


@dataclass(frozen=True)
class PartialModel:
    """``carrier`` lists ambient element indices in ascending order.

    ``products`` maps carrier positions ``(i, j)`` to the carrier position
    of the ambient product, and contains a pair exactly when that product
    lies in the carrier.
    """

    carrier: tuple[int, ...]
    products: dict[tuple[int, int], int]

    def __len__(self) -> int:
        return len(self.carrier)

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(sorted(self.products.items()))))


def partial_model(G: GroupTable, M: ElementSet) -> PartialModel:
    carrier = M.members()
    if not carrier:
        raise EmptyCarrier("a partial model needs at least one element")
    pos = {g: i for i, g in enumerate(carrier)}
    products = {}
    for i, a in enumerate(carrier):
        row = G.mul[a]
        for j, b in enumerate(carrier):
            k = pos.get(row[b])
            if k is not None:
                products[i, j] = k
    return PartialModel(carrier, products)


def _signature(P: PartialModel, i: int) -> tuple:
    n = len(P)
    row = sum((i, j) in P.products for j in range(n))
    col = sum((j, i) in P.products for j in range(n))
    hits = sum(v == i for v in P.products.values())
    return row, col, hits, P.products.get((i, i)) == i, (i, i) in P.products


def partial_models_isomorphic(P: PartialModel, Q: PartialModel) -> Optional[tuple[int, ...]]:
    """Find a bijection of carrier positions preserving the partial product.

    Definedness must match in both directions: ``(i, j)`` is defined in
    ``P`` exactly when ``(s[i], s[j])`` is defined in ``Q``, and then
    ``s[P(i, j)] == Q(s[i], s[j])``.  Returns the witness ``s`` (as a tuple
    indexed by ``P`` positions) or ``None``.
    """
    n = len(P)
    if n != len(Q) or len(P.products) != len(Q.products):
        return None
    sig_p = [_signature(P, i) for i in range(n)]
    sig_q = [_signature(Q, j) for j in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return None
    image = [-1] * n
    used = [False] * n

    def consistent(i: int) -> bool:
        # every pair involving i whose both ends are assigned
        for k in range(i + 1):
            for a, b in ((i, k), (k, i)):
                pa, qa = P.products.get((a, b)), Q.products.get((image[a], image[b]))
                if (pa is None) != (qa is None):
                    return False
                if pa is not None and pa <= i and image[pa] != qa:
                    return False
        # products landing on i from earlier-assigned pairs
        for (a, b), v in P.products.items():
            if v == i and a <= i and b <= i and Q.products[image[a], image[b]] != image[i]:
                return False
        return True

    def search(i: int) -> bool:
        if i == n:
            return True
        for j in range(n):
            if used[j] or sig_q[j] != sig_p[i]:
                continue
            image[i], used[j] = j, True
            if consistent(i) and search(i + 1):
                return True
            image[i], used[j] = -1, False
        return False

    return tuple(image) if search(0) else None
