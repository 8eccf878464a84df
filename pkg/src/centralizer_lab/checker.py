"""Model checking of formulas over finite groups.

Evaluation is structural recursion.  A run of like quantifiers is handled
as one block: the matrix is split into conjuncts (for ``forall`` the
conjuncts of a counterexample), each conjunct is checked as soon as its
variables are bound, and simple conjuncts such as ``x in C(y)`` or
``x != 1`` shrink the candidate set of the variable being bound instead
of being tested element by element.  Candidates are always visited in
ascending index order, so the first witness found is the
lexicographically least one.
"""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .errors import BudgetExceeded, InconsistencyDetected, UnboundVariable
from .formulas import (
    And,
    Atom,
    Commutes,
    Eq,
    Exists,
    Forall,
    Formula,
    GraphSpec,
    Implies,
    InC,
    InZ,
    Not,
    Or,
    Term,
    atom_terms,
    free_vars,
    graph_sentence,
    named_axiom,
)
from .groups import GroupTable, bits_from_bool_row, iter_bits

DEFAULT_BUDGET = 10**9
DEFAULT_TUPLE_BUDGET = 10**7

Assignment = dict[str, int]


def commute_rows(G: GroupTable) -> tuple[int, ...]:
    """Per-element commuting masks, computed here independently of the centraliser engine."""

    def compute():
        a = G.array
        return tuple(bits_from_bool_row(a[g] == a[:, g]) for g in range(G.order))

    return G.memo("checker_commute_rows", compute)


@dataclass
class _Plan:
    """Compiled quantifier block."""

    variables: tuple[str, ...]
    upfront: list[Formula]
    # per level: maskable (conjunct, mask function) and conjuncts to test
    masks: list[list[Callable[[Assignment], int]]]
    tests: list[list[Formula]]
    # no conjunct at a deeper level mentions this variable
    dead: list[bool]


class _Checker:
    def __init__(self, G: GroupTable, budget: int):
        self.G = G
        self.mul = G.mul
        self.inv = G.inv
        self.rows = commute_rows(G)
        self.full = (1 << G.order) - 1
        self.centre = self.full
        for r in self.rows:
            self.centre &= r
        self.budget = budget
        self.nodes = 0
        self.plans: dict[int, tuple[Formula, _Plan]] = {}

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"evaluation exceeded {self.budget} nodes")

    # terms

    def value(self, t: Term, env: Assignment) -> int:
        x = 0
        mul, inv = self.mul, self.inv
        for name, e in t.factors:
            try:
                g = env[name]
            except KeyError:
                raise UnboundVariable(name) from None
            x = mul[x][g if e == 1 else inv[g]]
        return x

    # formulas

    def holds(self, f: Formula, env: Assignment) -> bool:
        self.tick()
        if isinstance(f, Atom):
            return self.value(f.term, env) == 0
        if isinstance(f, Eq):
            return self.value(f.lhs, env) == self.value(f.rhs, env)
        if isinstance(f, Commutes):
            return bool(self.rows[self.value(f.left, env)] >> self.value(f.right, env) & 1)
        if isinstance(f, InC):
            row = self.rows[self.value(f.elem, env)]
            return all(row >> self.value(y, env) & 1 for y in f.of)
        if isinstance(f, InZ):
            return bool(self.centre >> self.value(f.elem, env) & 1)
        if isinstance(f, Not):
            return not self.holds(f.body, env)
        if isinstance(f, And):
            return all(self.holds(p, env) for p in f.parts)
        if isinstance(f, Or):
            return any(self.holds(p, env) for p in f.parts)
        if isinstance(f, Implies):
            return not self.holds(f.premise, env) or self.holds(f.conclusion, env)
        if isinstance(f, (Forall, Exists)):
            return self.block(f, env)[0]
        raise TypeError(f"not a formula: {f!r}")

    def block(self, f: Formula, env: Assignment) -> tuple[bool, Optional[Assignment]]:
        """Decide a quantifier block; also return its witness or counterexample."""
        plan = self.plan(f)
        found = self.search(plan, env)
        if isinstance(f, Exists):
            return found is not None, found
        return found is None, found

    def plan(self, f: Formula) -> _Plan:
        cached = self.plans.get(id(f))
        if cached is not None and cached[0] is f:
            return cached[1]
        kind = type(f)
        variables = []
        body = f
        while isinstance(body, kind):
            variables.append(body.var)
            body = body.body
        conjuncts = _conjuncts(body) if kind is Exists else _negated_conjuncts(body)
        level_of = {name: i for i, name in enumerate(variables)}
        k = len(variables)
        plan = _Plan(tuple(variables), [], [[] for _ in variables], [[] for _ in variables], [True] * k)
        for c in conjuncts:
            mentioned = [level_of[n] for n in _mentions(c) if n in level_of]
            if not mentioned:
                plan.upfront.append(c)
                continue
            level = max(mentioned)
            for i in mentioned:
                if i < level:
                    plan.dead[i] = False
            mask = self.mask_for(c, variables[level])
            if mask is None:
                plan.tests[level].append(c)
            else:
                plan.masks[level].append(mask)
        self.plans[id(f)] = (f, plan)
        return plan

    def search(self, plan: _Plan, env: Assignment) -> Optional[Assignment]:
        if not all(self.holds(c, env) for c in plan.upfront):
            return None
        variables = plan.variables
        saved = {name: env[name] for name in variables if name in env}
        last = len(variables) - 1

        def descend(level: int) -> bool:
            domain = self.full
            for mask in plan.masks[level]:
                domain &= mask(env)
                if not domain:
                    return False
            name = variables[level]
            tests = plan.tests[level]
            dead = plan.dead[level]
            for g in iter_bits(domain):
                self.tick()
                env[name] = g
                if all(self.holds(c, env) for c in tests):
                    if level == last or descend(level + 1):
                        return True
                    if dead:
                        # deeper levels never look at this variable
                        return False
            return False

        try:
            if descend(0):
                return {name: env[name] for name in variables}
            return None
        finally:
            for name in variables:
                env.pop(name, None)
            env.update(saved)

    def mask_for(self, c: Formula, var: str) -> Optional[Callable[[Assignment], int]]:
        """Exact candidate mask for ``var`` satisfying ``c``, when ``c`` has a simple shape."""
        negated = isinstance(c, Not)
        core = c.body if negated else c
        if not isinstance(core, (Atom, Eq, Commutes, InC, InZ)):
            return None
        names = [t.bare_variable for t in atom_terms(core)]
        if any(n is None for n in names) or names.count(var) != 1:
            return None
        rows, full = self.rows, self.full

        if isinstance(core, Atom):
            def base(env):
                return 1
        elif isinstance(core, InZ):
            centre = self.centre

            def base(env):
                return centre
        elif isinstance(core, (Eq, Commutes)):
            other = names[1] if names[0] == var else names[0]
            if isinstance(core, Eq):
                def base(env):
                    return 1 << env[other]
            else:
                def base(env):
                    return rows[env[other]]
        else:
            elem, of = names[0], names[1:]
            if elem == var:
                def base(env):
                    m = full
                    for y in of:
                        m &= rows[env[y]]
                    return m
            else:
                others = [y for y in of if y != var]

                def base(env):
                    row = rows[env[elem]]
                    if all(row >> env[y] & 1 for y in others):
                        return row
                    return 0

        if negated:
            return lambda env: full & ~base(env)
        return base


def _mentions(f: Formula) -> set[str]:
    names: set[str] = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, (Atom, Eq, Commutes, InC, InZ)):
            for t in atom_terms(node):
                names.update(t.variables())
        elif isinstance(node, Not):
            stack.append(node.body)
        elif isinstance(node, (And, Or)):
            stack.extend(node.parts)
        elif isinstance(node, Implies):
            stack.extend((node.premise, node.conclusion))
        elif isinstance(node, (Forall, Exists)):
            stack.append(node.body)
    return names


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return [c for p in f.parts for c in _conjuncts(p)]
    if isinstance(f, Not):
        return _negated_conjuncts(f.body)
    return [f]


def _negated_conjuncts(f: Formula) -> list[Formula]:
    """Conjuncts of ``not f``."""
    if isinstance(f, Not):
        return _conjuncts(f.body)
    if isinstance(f, Or):
        return [c for p in f.parts for c in _negated_conjuncts(p)]
    if isinstance(f, Implies):
        return _conjuncts(f.premise) + _negated_conjuncts(f.conclusion)
    return [Not(f)]


# public API


def _check_bound(f: Formula, a: Assignment, G: GroupTable) -> None:
    for name in free_vars(f):
        if name not in a:
            raise UnboundVariable(name)
    for name, g in a.items():
        if not 0 <= g < G.order:
            raise ValueError(f"{name} = {g} is not an element of a group of order {G.order}")


def evaluate(G: GroupTable, f: Formula, a: Optional[Assignment] = None, budget: int = DEFAULT_BUDGET) -> bool:
    """Truth value of ``f`` in ``G`` under assignment ``a`` of its free variables."""
    a = dict(a or {})
    _check_bound(f, a, G)
    return _Checker(G, budget).holds(f, a)


@dataclass
class CheckReport:
    verdict: bool
    witness: Optional[Assignment]
    node_count: int
    elapsed: float
    kind: str = "none"  # "witness", "counterexample" or "none"
    group: Optional[GroupTable] = field(default=None, repr=False)

    def named_witness(self) -> Optional[dict[str, str]]:
        if self.witness is None or self.group is None:
            return self.witness and {k: str(v) for k, v in self.witness.items()}
        names = self.group.element_names
        return {k: names[v] for k, v in self.witness.items()}

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "kind": self.kind,
            "witness": self.named_witness(),
            "nodes": self.node_count,
            "millis": round(self.elapsed * 1000, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def check(G: GroupTable, f: Formula, a: Optional[Assignment] = None, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Evaluate ``f`` and report the outermost block's witness or counterexample."""
    a = dict(a or {})
    _check_bound(f, a, G)
    checker = _Checker(G, budget)
    start = time.perf_counter()
    if isinstance(f, (Forall, Exists)):
        verdict, found = checker.block(f, a)
    else:
        verdict, found = checker.holds(f, a), None
    kind = "none"
    if found is not None:
        kind = "witness" if isinstance(f, Exists) else "counterexample"
    return CheckReport(verdict, found, checker.nodes, time.perf_counter() - start, kind, G)


def quantifier_block(f: Formula) -> tuple[list[str], Formula]:
    """Split ``Q x1 ... Q xk body`` into the variable list and the body."""
    kind = type(f)
    names = []
    while isinstance(f, kind) and isinstance(f, (Forall, Exists)):
        names.append(f.var)
        f = f.body
    return names, f


def truth_domain(
    G: GroupTable, f: Formula, budget: int = DEFAULT_TUPLE_BUDGET
) -> Iterator[tuple[int, ...]]:
    """Stream the tuples over ``free_vars(f)`` satisfying ``f``, in lexicographic order."""
    names = free_vars(f)
    if G.order ** len(names) > budget:
        raise BudgetExceeded(f"|G|^{len(names)} = {G.order ** len(names)} tuples exceeds {budget}")
    checker = _Checker(G, DEFAULT_BUDGET)

    def stream():
        for values in itertools.product(range(G.order), repeat=len(names)):
            if checker.holds(f, dict(zip(names, values))):
                yield values

    return stream()


# commuting graph and graph admission


def commuting_graph(G: GroupTable) -> GraphSpec:
    """Vertices are the non-identity elements (as index strings); edges join distinct commuting pairs."""
    rows = commute_rows(G)
    vertices = [str(g) for g in range(1, G.order)]
    edges = [
        (str(g), str(h))
        for g in range(1, G.order)
        for h in iter_bits(rows[g] >> (g + 1) << (g + 1))
    ]
    return GraphSpec.from_edges(vertices, edges)


@dataclass(frozen=True)
class Implementation:
    """Group elements realising a graph, in the graph's vertex order."""

    graph: GraphSpec
    elements: tuple[int, ...]

    def assignment(self) -> Assignment:
        return dict(zip(self.graph.vertices, self.elements))


def _search_order(g: GraphSpec) -> list[int]:
    verts = list(g.vertices)
    degree = [g.degree(x) for x in verts]
    order: list[int] = []
    remaining = set(range(len(verts)))
    while remaining:
        def key(i):
            linked = sum(g.adjacent(verts[i], verts[j]) for j in order)
            return (-linked, -degree[i], i)

        best = min(remaining, key=key)
        order.append(best)
        remaining.remove(best)
    return order


def admits(G: GroupTable, g: GraphSpec) -> Optional[Implementation]:
    """Find distinct non-trivial elements whose commutation pattern is exactly ``g``.

    This is an induced embedding into the commuting graph: adjacent
    vertices must commute and non-adjacent ones must not.
    """
    verts = g.vertices
    k = len(verts)
    if k == 0 or k > G.order - 1:
        return None
    rows = commute_rows(G)
    nontrivial = ((1 << G.order) - 1) & ~1
    adj = [0] + [rows[h] & nontrivial & ~(1 << h) for h in range(1, G.order)]
    elem_degree = [a.bit_count() for a in adj]
    pattern_degree = [g.degree(x) for x in verts]
    at_least = {
        d: sum(1 << h for h in range(1, G.order) if elem_degree[h] >= d)
        for d in set(pattern_degree)
    }
    order = _search_order(g)
    linked = [[g.adjacent(verts[i], verts[j]) for j in range(k)] for i in range(k)]
    image = [0] * k

    def place(pos: int, used: int) -> bool:
        if pos == k:
            return True
        u = order[pos]
        cand = at_least[pattern_degree[u]] & ~used
        for w in order[:pos]:
            h = image[w]
            cand &= adj[h] if linked[u][w] else ~adj[h]
            if not cand:
                return False
        for h in iter_bits(cand):
            image[u] = h
            if place(pos + 1, used | 1 << h):
                return True
        return False

    if place(0, 1):
        return Implementation(g, tuple(image))
    return None


def admits_by_evaluation(G: GroupTable, g: GraphSpec, budget: int = DEFAULT_BUDGET) -> bool:
    """Same question as :func:`admits`, answered by evaluating the graph sentence."""
    return evaluate(G, graph_sentence(g), budget=budget)


# named axioms with evidence


def check_axiom(G: GroupTable, name: str, budget: int = DEFAULT_BUDGET) -> CheckReport:
    """Check a named axiom; ``CD(m)`` verdicts are cross-checked against ``cdim(G) <= m``."""
    f = named_axiom(name)
    report = check(G, f, budget=budget)
    key = name.replace(" ", "").upper()
    if key.startswith("CD("):
        from .centralisers import cdim

        m = int(key[3:-1])
        expected = cdim(G) <= m
        if report.verdict != expected:
            raise InconsistencyDetected(
                f"{name} evaluated to {report.verdict} but cdim({G.name}) = {cdim(G)}"
            )
    return report
