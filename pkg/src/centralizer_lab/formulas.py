"""First-order formulas over the language of groups.

Terms are words in variables and their inverses; the empty word is the
constant 1.  Besides the core connectives the AST keeps a few derived
atoms (``Commutes``, ``InC``, ``InZ``, ``Eq``) as sugar; :func:`expand`
rewrites them into the core language.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import BadLength, BadParameter, EmptyGraph

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
KEYWORDS = frozenset({"forall", "exists", "in", "notin"})


@dataclass(frozen=True)
class Term:
    """A word ``x1^e1 * x2^e2 * ...`` with exponents +1/-1; ``()`` is 1."""

    factors: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for var, exp in self.factors:
            if exp not in (1, -1) or not _IDENT.match(var) or var in KEYWORDS:
                raise ValueError(f"bad term factor {(var, exp)!r}")

    @classmethod
    def var(cls, name: str) -> "Term":
        return cls(((name, 1),))

    @property
    def is_one(self) -> bool:
        return not self.factors

    @property
    def bare_variable(self) -> str | None:
        """The variable name when the term is a single positive variable."""
        if len(self.factors) == 1 and self.factors[0][1] == 1:
            return self.factors[0][0]
        return None

    def inverse(self) -> "Term":
        return Term(tuple((v, -e) for v, e in reversed(self.factors)))

    def __mul__(self, other: "Term") -> "Term":
        return Term(self.factors + other.factors)

    def conjugate(self, by: "Term") -> "Term":
        """``self^by = by^-1 * self * by``."""
        return by.inverse() * self * by

    def variables(self) -> list[str]:
        return list(dict.fromkeys(v for v, _ in self.factors))

    def rename(self, mapping: dict[str, str]) -> "Term":
        return Term(tuple((mapping.get(v, v), e) for v, e in self.factors))


ONE = Term()


def commutator_term(t: Term, u: Term) -> Term:
    """``[t, u] = t^-1 u^-1 t u``."""
    return t.inverse() * u.inverse() * t * u


# formula nodes


@dataclass(frozen=True)
class Atom:
    """``term = 1``"""

    term: Term


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if self.rhs.is_one:
            raise ValueError("write 't = 1' as Atom(t)")


@dataclass(frozen=True)
class Commutes:
    """``[left, right] = 1``"""

    left: Term
    right: Term


@dataclass(frozen=True)
class InC:
    """``elem in C(of_1, ..., of_k)``, i.e. ``[of_i, elem] = 1`` for all i."""

    elem: Term
    of: tuple[Term, ...]

    def __post_init__(self):
        if not self.of:
            raise ValueError("C() needs at least one argument")


@dataclass(frozen=True)
class InZ:
    """``elem in Z``, i.e. ``forall w [w, elem] = 1``."""

    elem: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("And needs at least two parts; use conj()")


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ValueError("Or needs at least two parts; use disj()")


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Atom, Eq, Commutes, InC, InZ, Not, And, Or, Implies, Forall, Exists]
ATOMIC = (Atom, Eq, Commutes, InC, InZ)
QUANTIFIERS = (Forall, Exists)


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty conjunction")
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        raise ValueError("empty disjunction")
    return parts[0] if len(parts) == 1 else Or(parts)


def forall(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


def exists(names: Iterable[str], body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def v(name: str) -> Term:
    return Term.var(name)


def atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, Atom):
        return (f.term,)
    if isinstance(f, Eq):
        return (f.lhs, f.rhs)
    if isinstance(f, Commutes):
        return (f.left, f.right)
    if isinstance(f, InC):
        return (f.elem, *f.of)
    if isinstance(f, InZ):
        return (f.elem,)
    raise TypeError(f"not an atom: {f!r}")


def children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.parts
    if isinstance(f, Implies):
        return (f.premise, f.conclusion)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def free_vars(f: Formula) -> tuple[str, ...]:
    """Free variables in order of first occurrence."""
    out: dict[str, None] = {}

    def walk(node: Formula, bound: frozenset[str]) -> None:
        if isinstance(node, ATOMIC):
            for t in atom_terms(node):
                for name in t.variables():
                    if name not in bound:
                        out.setdefault(name)
        elif isinstance(node, QUANTIFIERS):
            walk(node.body, bound | {node.var})
        else:
            for c in children(node):
                walk(c, bound)

    walk(f, frozenset())
    return tuple(out)


def all_vars(f: Formula) -> set[str]:
    names: set[str] = set()
    for node in walk_nodes(f):
        if isinstance(node, ATOMIC):
            for t in atom_terms(node):
                names.update(t.variables())
        elif isinstance(node, QUANTIFIERS):
            names.add(node.var)
    return names


def walk_nodes(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def quantifier_count(f: Formula) -> int:
    return sum(isinstance(n, QUANTIFIERS) for n in walk_nodes(f))


def fresh_name(used: set[str], base: str = "w") -> str:
    for i in itertools.count(1):
        name = f"{base}{i}"
        if name not in used:
            return name
    raise AssertionError  # unreachable


def expand(f: Formula) -> Formula:
    """Rewrite every sugar atom into ``term = 1`` atoms and quantifiers."""
    used = all_vars(f)

    def go(node: Formula) -> Formula:
        if isinstance(node, Atom):
            return node
        if isinstance(node, Eq):
            return Atom(node.lhs * node.rhs.inverse())
        if isinstance(node, Commutes):
            return Atom(commutator_term(node.left, node.right))
        if isinstance(node, InC):
            return conj(Atom(commutator_term(y, node.elem)) for y in node.of)
        if isinstance(node, InZ):
            w = fresh_name(used)
            used.add(w)
            return Forall(w, Atom(commutator_term(v(w), node.elem)))
        if isinstance(node, Not):
            return Not(go(node.body))
        if isinstance(node, And):
            return And(tuple(go(p) for p in node.parts))
        if isinstance(node, Or):
            return Or(tuple(go(p) for p in node.parts))
        if isinstance(node, Implies):
            return Implies(go(node.premise), go(node.conclusion))
        if isinstance(node, Forall):
            return Forall(node.var, go(node.body))
        if isinstance(node, Exists):
            return Exists(node.var, go(node.body))
        raise TypeError(node)

    return go(f)


# graphs and graph sentences


@dataclass(frozen=True)
class GraphSpec:
    """A finite simple graph on named vertices; edges are unordered pairs."""

    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or not e <= names:
                raise ValueError(f"bad edge {sorted(e)}")

    @classmethod
    def from_edges(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "GraphSpec":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def adjacent(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.edges

    def degree(self, a: str) -> int:
        return sum(a in e for e in self.edges)


def path_graph(length: int) -> GraphSpec:
    """Path of ``length`` edges on vertices ``x1 .. x{length+1}``."""
    if length < 1:
        raise BadLength("paths need length >= 1")
    names = [f"x{i}" for i in range(1, length + 2)]
    return GraphSpec.from_edges(names, zip(names, names[1:]))


def cycle_graph(length: int) -> GraphSpec:
    if length < 3:
        raise BadLength("cycles need length >= 3")
    names = [f"x{i}" for i in range(1, length + 1)]
    return GraphSpec.from_edges(names, [*zip(names, names[1:]), (names[-1], names[0])])


def graph_formula_open(g: GraphSpec) -> Formula:
    """Open formula stating that the vertices realise exactly the graph's commutation pattern.

    Conjuncts come in four groups, each in vertex-pair order: all vertices
    non-trivial, pairwise distinct, adjacent pairs commute, non-adjacent
    pairs do not.
    """
    if not g.vertices:
        raise EmptyGraph("graph has no vertices")
    vs = g.vertices
    pairs = list(itertools.combinations(vs, 2))
    parts: list[Formula] = [Not(Atom(v(x))) for x in vs]
    parts += [Not(Eq(v(x), v(y))) for x, y in pairs]
    parts += [Commutes(v(x), v(y)) for x, y in pairs if g.adjacent(x, y)]
    parts += [Not(Commutes(v(x), v(y))) for x, y in pairs if not g.adjacent(x, y)]
    return conj(parts)


def graph_sentence(g: GraphSpec) -> Formula:
    return exists(g.vertices, graph_formula_open(g))


# named axioms


def comm_axiom() -> Formula:
    return forall(["x", "y"], Commutes(v("x"), v("y")))


def ct_axiom() -> Formula:
    x, y, z = v("x"), v("y"), v("z")
    return forall(
        ["x", "y", "z"],
        Implies(And((Not(Atom(x)), InC(x, (y, z)))), Commutes(y, z)),
    )


def csa_axiom() -> Formula:
    x, y, t = v("x"), v("y"), v("t")
    return forall(
        ["x", "y", "t"],
        Implies(And((Not(Atom(x)), InC(x, (y,)), InC(x.conjugate(t), (y,)))), InC(t, (y,))),
    )


def us_axiom() -> Formula:
    x, y = v("x"), v("y")
    return forall(["x", "y"], Implies(InC(x.conjugate(y), (x,)), InC(y, (x,))))


def cd_axiom(m: int) -> Formula:
    """Universal sentence holding exactly in groups of centraliser dimension <= m."""
    if m < 0:
        raise BadParameter("CD(m) needs m >= 0")
    if m <= 1:
        return comm_axiom()
    xs = [f"x{i}" for i in range(m + 1)]
    ys = [f"y{i}" for i in range(1, m + 1)]
    premise: list[Formula] = []
    for i in range(1, m + 1):
        y = v(ys[i - 1])
        premise.append(InC(y, tuple(v(x) for x in xs[:i])))
        premise.append(Not(InC(y, tuple(v(x) for x in xs[: i + 1]))))
    premise.append(InC(v("z"), tuple(v(x) for x in xs)))
    # each y_i is quantified right after x_i so that a search can settle it early
    order = ["x0"] + [name for pair in zip(xs[1:], ys) for name in pair] + ["z"]
    return forall(order, Implies(And(tuple(premise)), InZ(v("z"))))


_AXIOM_RE = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\(\s*(-?\d+)\s*\))?\s*$")


def named_axiom(name: str, param: int | None = None) -> Formula:
    """Look up ``CT``, ``CSA``, ``US``, ``COMM``, ``CD(m)``, ``PATH(l)`` or ``CYC(l)``.

    The parameter may be given inline (``"CD(2)"``) or as ``param``.
    """
    m = _AXIOM_RE.match(name)
    if not m:
        raise BadParameter(f"unknown axiom {name!r}")
    key = m.group(1).upper()
    if m.group(2) is not None:
        if param is not None:
            raise BadParameter("parameter given twice")
        param = int(m.group(2))
    simple = {"CT": ct_axiom, "CSA": csa_axiom, "US": us_axiom, "COMM": comm_axiom}
    if key in simple:
        if param is not None:
            raise BadParameter(f"{key} takes no parameter")
        return simple[key]()
    if param is None:
        raise BadParameter(f"{key} needs a parameter")
    if key == "CD":
        return cd_axiom(param)
    try:
        if key == "PATH":
            return graph_sentence(path_graph(param))
        if key == "CYC":
            return graph_sentence(cycle_graph(param))
    except BadLength as exc:
        raise BadParameter(str(exc)) from None
    raise BadParameter(f"unknown axiom {name!r}")


AXIOM_NAMES = ("CT", "CSA", "US", "COMM", "CD(m)", "PATH(l)", "CYC(l)")
