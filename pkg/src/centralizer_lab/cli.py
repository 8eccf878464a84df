"""``centralizer-lab`` command line.

Exit codes: 0 success, 1 suite failure, 2 usage or input error,
3 internal inconsistency between the model checker and the lattice engine.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .catalog import default_catalog, resolve_group
from .centralisers import cdim, centre, lattice, z_indicator
from .checker import DEFAULT_BUDGET, DEFAULT_TUPLE_BUDGET, admits, check, check_axiom, evaluate, truth_domain
from .errors import BadGraph, BadLength, CentralizerLabError, InconsistencyDetected
from .formulas import GraphSpec, csa_axiom, ct_axiom, cycle_graph, free_vars, named_axiom, path_graph, us_axiom
from .groupio import regular_generators, write_cayley, write_permutations
from .suites import SUITES, results_json, run_suites
from .syntax import parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text.rstrip("\n"))


def _budget(args, default: int = DEFAULT_BUDGET) -> int:
    return default if args.budget is None else args.budget


def _group(args):
    return resolve_group(args.group, strict=args.strict_assoc)


# info


def cmd_info(args) -> int:
    G = _group(args)
    report = {
        "group": G.name or args.group,
        "order": G.order,
        "abelian": G.is_abelian,
        "centre": centre(G).cardinality,
        "cdim": cdim(G),
        "z": z_indicator(G),
        "CT": evaluate(G, ct_axiom(), budget=_budget(args)),
        "CSA": evaluate(G, csa_axiom(), budget=_budget(args)),
        "US": evaluate(G, us_axiom(), budget=_budget(args)),
    }
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        width = max(map(len, report))
        for key, value in report.items():
            if isinstance(value, bool):
                value = str(value).lower()
            print(f"{key.ljust(width)}  {value}")
    return EXIT_OK


# lattice


def cmd_lattice(args) -> int:
    G = _group(args)
    lat = lattice(G)
    if args.dot:
        text = lat.to_dot(with_elements=args.elements)
    elif args.json:
        text = lat.to_json(with_names=args.elements)
    else:
        lines = [f"{G.name or args.group}: {len(lat.nodes)} centralisers, height {lat.height}"]
        names = G.element_names
        for i, node in enumerate(lat.nodes):
            below = [str(v) for u, v in lat.hasse_edges if u == i]
            lines.append(
                f"  [{i}] |C|={node.cardinality} depth={lat.depth[i]}"
                f" covers={','.join(below) or '-'}  {{{','.join(names[g] for g in node)}}}"
            )
        text = "\n".join(lines)
    _emit(text, args.output)
    return EXIT_OK


# eval


def _formula_from(args):
    if args.axiom:
        return named_axiom(args.axiom)
    if args.formula_file:
        return parse(Path(args.formula_file).read_text())
    if args.formula is not None:
        return parse(args.formula)
    raise CentralizerLabError("give one of -f/--formula, --formula-file or --axiom")


def cmd_eval(args) -> int:
    G = _group(args)
    f = _formula_from(args)
    names = G.element_names
    if free_vars(f):
        variables = free_vars(f)
        rows = [[names[g] for g in t] for t in truth_domain(G, f, _budget(args, DEFAULT_TUPLE_BUDGET))]
        if args.json:
            print(json.dumps({"variables": list(variables), "tuples": rows}, sort_keys=True))
        else:
            print(f"truth domain over ({', '.join(variables)}): {len(rows)} tuple(s)")
            for row in rows:
                print("  (" + ", ".join(row) + ")")
        return EXIT_OK
    budget = _budget(args)
    report = check_axiom(G, args.axiom, budget) if args.axiom else check(G, f, budget=budget)
    if args.json:
        print(report.to_json())
    else:
        print(f"verdict: {str(report.verdict).lower()}")
        if report.witness is not None:
            pairs = ", ".join(f"{k}={v}" for k, v in report.named_witness().items())
            print(f"{report.kind}: {pairs}")
        print(f"nodes: {report.node_count}")
    return EXIT_OK


# admits


def parse_graph(source: str) -> GraphSpec:
    """``path:l``, ``cycle:l`` or a file with one ``u v`` edge (or lone ``u``) per line."""
    kind, _, rest = source.partition(":")
    if kind in ("path", "cycle") and rest:
        try:
            length = int(rest)
        except ValueError:
            raise BadGraph(f"bad length in {source!r}") from None
        try:
            return path_graph(length) if kind == "path" else cycle_graph(length)
        except BadLength as exc:
            raise BadGraph(str(exc)) from None
    path = Path(source)
    if not path.is_file():
        raise BadGraph(f"graph source {source!r} is neither path:l, cycle:l nor a file")
    vertices: list[str] = []
    edges = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        words = line.split("#", 1)[0].split()
        if not words:
            continue
        if len(words) > 2 or (len(words) == 2 and words[0] == words[1]):
            raise BadGraph(f"line {lineno}: expected 'u v' or 'u', got {line.strip()!r}")
        for w in words:
            if w not in vertices:
                vertices.append(w)
        if len(words) == 2:
            edges.append((words[0], words[1]))
    if not vertices:
        raise BadGraph("graph file has no vertices")
    return GraphSpec.from_edges(vertices, edges)


def cmd_admits(args) -> int:
    G = _group(args)
    g = parse_graph(args.graph)
    impl = admits(G, g)
    names = G.element_names
    if args.json:
        payload = None if impl is None else {vx: names[e] for vx, e in zip(g.vertices, impl.elements)}
        print(json.dumps({"admits": impl is not None, "implementation": payload}, sort_keys=True))
    elif impl is None:
        print("none")
    else:
        print(", ".join(f"{vx}={names[e]}" for vx, e in zip(g.vertices, impl.elements)))
    return EXIT_OK


# verify


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise CentralizerLabError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    results = run_suites(names, jobs=args.jobs)
    if args.json:
        _emit(results_json(results), args.output)
    else:
        text = "\n\n".join(r.table() for r in results)
        verdict = "PASS" if all(r.passed for r in results) else "FAIL"
        _emit(text + f"\n\n{verdict}: {sum(r.passed for r in results)}/{len(results)} suites passed", args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# catalog


def cmd_catalog(args) -> int:
    cat = default_catalog()
    if args.action == "list":
        entries = cat.entries(include_aliases=True)
        if args.json:
            rows = [
                {"name": e.name, "order": e.order, "recipe": e.recipe, "note": e.note, "alias_of": e.alias_of}
                for e in entries
            ]
            print(json.dumps(rows, sort_keys=True))
        else:
            width = max(len(e.name) for e in entries)
            for e in entries:
                alias = f" (alias of {e.alias_of})" if e.alias_of else ""
                print(f"{e.name.ljust(width)}  {e.order:>4}  {e.recipe}{alias}")
        return EXIT_OK
    if not args.name:
        raise CentralizerLabError("catalog dump needs a group name")
    entry = cat.entry(args.name)
    if args.format == "cayley":
        text = write_cayley(entry.build())
    elif entry.permutations is not None:
        degree, gens = entry.permutations
        text = write_permutations(degree, gens)
    else:
        G = entry.build()
        text = write_permutations(G.order, regular_generators(G))
    _emit(text.rstrip("\n"), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--budget", type=int, default=None, help="node budget for evaluation (tuple budget for truth domains)")
    common.add_argument("--strict-assoc", action="store_true", help="check associativity exhaustively when loading tables")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for verification suites")
    common.add_argument("-o", "--output", help="write output to a file")

    parser = argparse.ArgumentParser(prog="centralizer-lab", description="Centralisers, centraliser dimension and first-order checks on finite groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", parents=[common], help="summary of a group")
    p.add_argument("group", help="catalog name, group file, family spec like dihedral(8), or AxB")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("lattice", parents=[common], help="centraliser lattice")
    p.add_argument("group")
    p.add_argument("--dot", action="store_true", help="Graphviz output")
    p.add_argument("--elements", action="store_true", help="include element names")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("eval", parents=[common], help="evaluate a formula or named axiom")
    p.add_argument("group")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-f", "--formula")
    src.add_argument("--formula-file")
    src.add_argument("--axiom", help="CT, CSA, US, COMM, CD(m), PATH(l) or CYC(l)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("admits", parents=[common], help="look for an implementation of a graph")
    p.add_argument("group")
    p.add_argument("graph", help="path:l, cycle:l or an edge-list file")
    p.set_defaults(func=cmd_admits)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITES)} or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list or dump catalog groups")
    p.add_argument("action", choices=["list", "dump"])
    p.add_argument("name", nargs="?")
    p.add_argument("--format", choices=["cayley", "perm"], default="cayley")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconsistencyDetected as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (CentralizerLabError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
