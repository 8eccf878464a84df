"""Verification suites over the catalog.

A suite is a list of independent cases.  Each case names its group by a
catalog reference, so cases can run in worker processes; results are
always reported in case order.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Any, Callable, Optional

from .catalog import default_catalog, resolve_group
from .centralisers import cdim, centraliser, centre
from .checker import admits, evaluate
from .formulas import csa_axiom, ct_axiom, cycle_graph, graph_sentence, named_axiom, path_graph, us_axiom
from .groups import ElementSet, are_isomorphic, quotient_by_normal, subgroup_as_group, subgroup_closure
from .partial import partial_model, partial_models_isomorphic


@dataclass(frozen=True)
class CaseRecord:
    group: str
    claim: str
    expected: Any
    computed: Any
    passed: bool


@dataclass(frozen=True)
class SuiteResult:
    name: str
    cases: tuple[CaseRecord, ...]

    @property
    def total(self) -> int:
        return len(self.cases)

    @property
    def failures(self) -> int:
        return sum(not c.passed for c in self.cases)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "summary": {"total": self.total, "passed": self.total - self.failures, "failed": self.failures},
            "cases": [asdict(c) for c in self.cases],
        }

    def table(self) -> str:
        rows = [("group", "claim", "expected", "computed", "ok")]
        rows += [(c.group, c.claim, str(c.expected), str(c.computed), "pass" if c.passed else "FAIL") for c in self.cases]
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = [f"== {self.name}: {self.total - self.failures}/{self.total} passed"]
        for r in rows:
            lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        return "\n".join(lines)


def _names(max_order: Optional[int] = None, nonabelian: bool = False) -> list[str]:
    out = []
    for e in default_catalog().entries():
        if max_order is not None and e.order > max_order:
            continue
        if nonabelian and e.build().is_abelian:
            continue
        out.append(e.name)
    return out


def _record(group: str, claim: str, expected, computed) -> CaseRecord:
    return CaseRecord(group, claim, expected, computed, expected == computed)


# cyc3


def _cyc3_cases():
    return [(name,) for name in _names()]


def _cyc3_run(name: str) -> CaseRecord:
    G = resolve_group(name)
    D6 = default_catalog().get("D6")
    expected = not (G.order < 4 or (G.order == 6 and are_isomorphic(G, D6)))
    found = admits(G, cycle_graph(3)) is not None
    by_sentence = evaluate(G, graph_sentence(cycle_graph(3)))
    computed = found if found == by_sentence else "search/sentence disagree"
    return _record(name, "admits Cyc3", expected, computed)


# path1


def _path1_cases():
    return [(name,) for name in _names()]


def _path1_run(name: str) -> CaseRecord:
    G = resolve_group(name)
    return _record(name, "admits Path1", G.order > 2, evaluate(G, graph_sentence(path_graph(1))))


# cd-axiom


def _cd_cases():
    cases = []
    for name in _names(max_order=16):
        order = default_catalog().entry(name).order
        top = 3 if order <= 10 else 2
        cases += [(name, m) for m in range(top + 1)]
    return cases


def _cd_run(name: str, m: int) -> CaseRecord:
    G = resolve_group(name)
    return _record(name, f"CD({m}) holds iff cdim <= {m}", cdim(G) <= m, evaluate(G, named_axiom(f"CD({m})")))


# product

PRODUCT_PAIRS = [
    ("D6", "D6"), ("D8", "D8"), ("D6", "D8"), ("D6", "Q8"), ("Q8", "Q8"),
    ("C2", "D6"), ("C3", "D8"), ("C2xC2", "A4"), ("C4", "Dic12"), ("D10", "C5"),
    ("A4", "D6"), ("A4", "A4"), ("Dic12", "D8"), ("D14", "D6"), ("Q8", "D10"),
    ("S4", "D6"), ("S4", "C2"), ("SL2_3", "C3"), ("SL2_3", "D6"), ("Heis3", "D6"),
    ("Heis3", "C4"), ("D16", "Q8"), ("Q16", "D6"), ("S3xS3", "C2"), ("S4", "S4"),
    ("S5", "C2"), ("S5", "C7"), ("D12", "D12"),
]


def _product_cases():
    return list(PRODUCT_PAIRS)


def _product_run(a: str, b: str) -> CaseRecord:
    G, H = resolve_group(a), resolve_group(b)
    P = resolve_group(f"{a}x{b}")
    return _record(f"{a}x{b}", "cdim(AxB) = cdim(A) + cdim(B)", cdim(G) + cdim(H), cdim(P))


# centraliser-identities

IDENTITY_SAMPLES = 200


def _random_subset(rng: random.Random, n: int) -> ElementSet:
    size = rng.randint(0, min(n, 4))
    return ElementSet.of(n, rng.sample(range(n), size))


def identity_violations(G, samples: int = IDENTITY_SAMPLES, seed: str = "") -> list[str]:
    """Check the six basic centraliser identities on random subset pairs."""
    rng = random.Random(f"identities:{G.name}:{seed}")
    C = lambda S: centraliser(G, S)  # noqa: E731
    bad = []
    for i in range(samples):
        S, T = _random_subset(rng, G.order), _random_subset(rng, G.order)
        U = S | T
        checks = {
            "i": C(S) & C(T) == C(U),
            "ii": (C(S) | C(T)) <= C(S & T),
            "iii": C(S) >= C(U),
            "iv": S <= C(C(S)),
            "v": C(S) == C(C(C(S))),
            "vi": (C(S) <= C(T)) == (C(C(S)) >= C(C(T))),
        }
        bad += [f"{key}@{i}" for key, ok in checks.items() if not ok]
    return bad


def _identity_cases():
    return [(name,) for name in _names()]


def _identity_run(name: str) -> CaseRecord:
    bad = identity_violations(resolve_group(name))
    return _record(name, f"identities (i)-(vi) on {IDENTITY_SAMPLES} random pairs", 0, len(bad))


# ct-cd2


def _ctcd2_cases():
    return [(name,) for name in _names(nonabelian=True)]


def _ctcd2_run(name: str) -> CaseRecord:
    G = resolve_group(name)
    expected = cdim(G) == 2 and centre(G).cardinality == 1
    return _record(name, "CT iff cdim = 2 and Z trivial", expected, evaluate(G, ct_axiom()))


# index-bound

INDEX_PAIRS_PER_GROUP = 2


def _index_cases():
    return [(name, i) for name in _names() for i in range(INDEX_PAIRS_PER_GROUP)]


def _index_run(name: str, i: int) -> CaseRecord:
    G = resolve_group(name)
    rng = random.Random(f"index-bound:{name}:{i}")
    # even cases take two random generators, odd cases one (mostly proper subgroups)
    picks = [rng.randrange(G.order), rng.randrange(G.order) if i % 2 == 0 else 0]
    gens = ElementSet.of(G.order, picks)
    Hset = subgroup_closure(G, gens)
    H, _ = subgroup_as_group(G, Hset)
    k = G.order // H.order
    d, D = cdim(H), cdim(G)
    bound = ((d + 2) * k + 2) * k
    ok = D <= bound and d <= D
    label = f"{name} > <{','.join(G.element_names[g] for g in gens)}>"
    claim = f"index {k}: cdim(H)={d} <= cdim(G)={D} <= {bound}"
    return CaseRecord(label, claim, True, ok, ok)


# us-csa


def _uscsa_cases():
    return [(name,) for name in _names()]


def _uscsa_run(name: str) -> CaseRecord:
    G = resolve_group(name)
    ct, csa, us = (evaluate(G, f) for f in (ct_axiom(), csa_axiom(), us_axiom()))
    ok = (not csa or ct) and ((ct and us) == csa)
    return CaseRecord(name, f"CSA => CT and CT & US <=> CSA (CT={ct}, CSA={csa}, US={us})", True, ok, ok)


# partial-model


def separating_partial_model():
    """The S3 carrier {a, b, ab, ba} and the number of 4-element C6 models isomorphic to it."""
    S3 = resolve_group("S3")
    C6 = resolve_group("C6")
    a, b = S3.element("(0,1)"), S3.element("(1,2)")
    carrier = ElementSet.of(S3.order, [a, b, S3.mul[a][b], S3.mul[b][a]])
    P = partial_model(S3, carrier)
    matches = 0
    for subset in itertools.combinations(range(C6.order), 4):
        Q = partial_model(C6, ElementSet.of(C6.order, subset))
        if partial_models_isomorphic(P, Q) is not None:
            matches += 1
    return P, carrier, matches


def _partial_cases():
    return [()]


def _partial_run() -> CaseRecord:
    _, carrier, matches = separating_partial_model()
    ok = carrier.cardinality == 4 and matches == 0
    return CaseRecord("S3 vs C6", "{a,b,ab,ba} matches no 4-element partial model of C6", 0, matches, ok)


# quotient (informational)


def _quotient_cases():
    return [(name,) for name in _names(nonabelian=True)]


def _quotient_run(name: str) -> CaseRecord:
    G = resolve_group(name)
    Q, _ = quotient_by_normal(G, centre(G))
    relation = "=" if cdim(Q) == cdim(G) else ("<" if cdim(Q) < cdim(G) else ">")
    return CaseRecord(name, "cdim(G/Z) compared with cdim(G) (reported only)", None, f"{cdim(Q)} {relation} {cdim(G)}", True)


SUITES: dict[str, tuple[Callable[[], list[tuple]], Callable[..., CaseRecord]]] = {
    "cyc3": (_cyc3_cases, _cyc3_run),
    "path1": (_path1_cases, _path1_run),
    "cd-axiom": (_cd_cases, _cd_run),
    "product": (_product_cases, _product_run),
    "centraliser-identities": (_identity_cases, _identity_run),
    "ct-cd2": (_ctcd2_cases, _ctcd2_run),
    "index-bound": (_index_cases, _index_run),
    "us-csa": (_uscsa_cases, _uscsa_run),
    "partial-model": (_partial_cases, _partial_run),
    "quotient": (_quotient_cases, _quotient_run),
}


def _run_case(job: tuple[str, tuple]) -> CaseRecord:
    suite, args = job
    return SUITES[suite][1](*args)


def run_suites(names: list[str], jobs: int = 1) -> list[SuiteResult]:
    for n in names:
        if n not in SUITES:
            raise KeyError(n)
    work = [(n, args) for n in names for args in SUITES[n][0]()]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_case, work, chunksize=1))
    else:
        records = [_run_case(job) for job in work]
    results = []
    for n in names:
        mine = tuple(r for (suite, _), r in zip(work, records) if suite == n)
        results.append(SuiteResult(n, mine))
    return results


def run_suite(name: str, jobs: int = 1) -> SuiteResult:
    return run_suites([name], jobs)[0]


def results_json(results: list[SuiteResult]) -> str:
    payload = {
        "passed": all(r.passed for r in results),
        "suites": [r.to_dict() for r in results],
    }
    return json.dumps(payload, sort_keys=True, indent=2)
