"""Named families of finite groups with deterministic element orderings."""

from __future__ import annotations

import itertools
import re

from .errors import UnsupportedSpec
from .groups import (
    DEFAULT_ORDER_CAP,
    GroupTable,
    build_from_permutations,
    direct_product,
)


def _power_name(sym: str, k: int) -> str:
    if k == 0:
        return ""
    return sym if k == 1 else f"{sym}^{k}"


def _from_normal_forms(forms, multiply, names, label) -> GroupTable:
    """Tabulate a group whose elements are hashable normal forms; ``forms[0]`` is 1."""
    index = {f: i for i, f in enumerate(forms)}
    mul = [[index[multiply(a, b)] for b in forms] for a in forms]
    inv = [row.index(0) for row in mul]
    return GroupTable(mul, inv, label, names)


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise UnsupportedSpec(f"order {order} exceeds cap {cap}")


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    if n < 1:
        raise UnsupportedSpec("cyclic(n) needs n >= 1")
    _check_cap(n, cap)
    names = ["e"] + [_power_name("g", k) for k in range(1, n)]
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    inv = [(-a) % n for a in range(n)]
    return GroupTable(mul, inv, f"C{n}", names)


def dihedral(order: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Symmetries of a regular ``order/2``-gon: elements ``r^k s^j``."""
    if order < 2 or order % 2:
        raise UnsupportedSpec("dihedral(2n) needs an even order >= 2")
    _check_cap(order, cap)
    n = order // 2
    forms = [(k, j) for j in (0, 1) for k in range(n)]

    def multiply(a, b):
        (k, j), (l, i) = a, b
        # s r^l = r^-l s
        return ((k + (-l if j else l)) % n, (j + i) % 2)

    names = [(_power_name("r", k) + ("s" if j else "")) or "e" for k, j in forms]
    return _from_normal_forms(forms, multiply, names, f"D{order}")


def dicyclic(order: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Dicyclic group of order 4n: ``<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>``.

    Order 8 gives the quaternion group and powers of two give the
    generalised quaternion groups.
    """
    if order < 8 or order % 4:
        raise UnsupportedSpec("generalized_quaternion(4n) needs 4n >= 8")
    _check_cap(order, cap)
    n = order // 4
    m = 2 * n
    forms = [(k, j) for j in (0, 1) for k in range(m)]

    def multiply(a, b):
        (k, j), (l, i) = a, b
        if j == 0:
            return ((k + l) % m, i)
        # x a^l = a^-l x
        k = k - l
        if i == 1:
            return ((k + n) % m, 0)
        return (k % m, 1)

    names = [(_power_name("a", k) + ("x" if j else "")) or "e" for k, j in forms]
    label = "Q8" if order == 8 else f"Dic{order}"
    if order > 8 and order & (order - 1) == 0:
        label = f"Q{order}"
    return _from_normal_forms(forms, multiply, names, label)


def symmetric(n: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    if not 1 <= n <= 6:
        raise UnsupportedSpec("symmetric(n) supports 1 <= n <= 6")
    gens = []
    if n >= 2:
        gens.append([*range(1, n), 0])
        gens.append([1, 0, *range(2, n)])
    return build_from_permutations(n, gens, f"S{n}", cap)


def alternating(n: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    if not 1 <= n <= 6:
        raise UnsupportedSpec("alternating(n) supports 1 <= n <= 6")
    # 3-cycles (0 1 k) generate A_n
    gens = []
    for k in range(2, n):
        images = list(range(n))
        images[0], images[1], images[k] = 1, k, 0
        gens.append(images)
    return build_from_permutations(n, gens, f"A{n}", cap)


def elementary_abelian(p: int, k: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    if not _is_prime(p) or k < 1:
        raise UnsupportedSpec("elementary_abelian(p, k) needs p prime and k >= 1")
    _check_cap(p**k, cap)
    forms = list(itertools.product(range(p), repeat=k))

    def multiply(a, b):
        return tuple((x + y) % p for x, y in zip(a, b))

    names = ["e" if not any(f) else "v" + "".join(map(str, f)) for f in forms]
    label = "x".join([f"C{p}"] * k)
    return _from_normal_forms(forms, multiply, names, label)


def heisenberg_mod_p(p: int, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Upper unitriangular 3x3 matrices over Z/p; ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``."""
    if not _is_prime(p):
        raise UnsupportedSpec("heisenberg_mod_p(p) needs p prime")
    _check_cap(p**3, cap)
    forms = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def multiply(u, v):
        return ((u[0] + v[0]) % p, (u[1] + v[1]) % p, (u[2] + v[2] + u[0] * v[1]) % p)

    names = ["e" if f == (0, 0, 0) else "[%d,%d,%d]" % f for f in forms]
    return _from_normal_forms(forms, multiply, names, f"Heis{p}")


_SPEC_RE = re.compile(r"^\s*([a-z_]+)\s*\(\s*([0-9,\s]*)\)\s*$")

_FAMILIES = {
    "cyclic": (cyclic, 1),
    "dihedral": (dihedral, 1),
    "quaternion": (lambda order, cap=DEFAULT_ORDER_CAP: dicyclic(order, cap), 1),
    "generalized_quaternion": (dicyclic, 1),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "elementary_abelian": (elementary_abelian, 2),
    "heisenberg_mod_p": (heisenberg_mod_p, 1),
}


def standard_group(spec: str, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Build a group from a text spec such as ``"dihedral(8)"`` or ``"elementary_abelian(2, 3)"``."""
    m = _SPEC_RE.match(spec)
    if not m or m.group(1) not in _FAMILIES:
        raise UnsupportedSpec(f"unknown group spec {spec!r}")
    family, arity = _FAMILIES[m.group(1)]
    args = [int(x) for x in m.group(2).replace(",", " ").split()]
    if len(args) != arity:
        raise UnsupportedSpec(f"{m.group(1)} takes {arity} argument(s)")
    if m.group(1) == "quaternion" and args != [8]:
        raise UnsupportedSpec("quaternion(8) is the only quaternion spec")
    return family(*args, cap=cap)


def trivial_group() -> GroupTable:
    return cyclic(1)


__all__ = [
    "alternating",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "elementary_abelian",
    "heisenberg_mod_p",
    "standard_group",
    "symmetric",
    "trivial_group",
]
