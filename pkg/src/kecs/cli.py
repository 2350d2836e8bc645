"""Command-line entry point: ``kecs <command> ...``.

Exit codes: 0 success (or a verified equality), 1 usage/input error,
2 malformed input file, 3 search budget exhausted, 4 mismatch found (a
verifier counterexample, or violations reported by ``check``).  Every error
is a single stderr line ``kecs: <tag>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import generators
from .errors import BudgetError, FormatError, KecsError
from .flow import konig_edge_color, solve_nuk_bipartite, solve_weighted_degree_constrained
from .forest import is_forest, solve_forest
from .graph import KEdgeColoring, bipartition, subgraph, validate_coloring
from .io import format_coloring, format_kecs, read_coloring, read_kecs, write_kecs
from .oracle import DEFAULT_BUDGET, DEFAULT_ENUM_BUDGET, SearchBudget, brute_nuk, matching_spectrum
from .reduction import (
    MAX2SAT,
    annotate_color_constraints,
    build_max2sat_instance,
    build_min2sat_instance,
)
from .sat import read_dimacs
from .verify import VERIFY_BUDGET, verify_lemma2, verify_theorem1, verify_theorem3

BUDGET_ENV = "KECS_BUDGET_EDGES"
METHODS = ("auto", "flow", "forest-dp", "brute", "weighted-flow")


class UsageError(Exception):
    tag = "usage-error"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _budget(args, default: SearchBudget) -> SearchBudget:
    edges = args.budget_edges
    if edges is None and os.environ.get(BUDGET_ENV):
        try:
            edges = int(os.environ[BUDGET_ENV])
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer") from None
    if edges is None:
        return default
    return SearchBudget(edges, default.max_nodes_expanded, default.time_limit)


def _say(*parts) -> None:
    print(*parts, file=sys.stderr)


def _solve(args) -> int:
    doc = read_kecs(args.graph)
    g, k = doc.graph, args.k
    weighted = not doc.unit_weights
    constrained = doc.constraints is not None
    bipartite = bipartition(g) is not None
    method = args.method
    if method == "auto":
        if bipartite and not weighted and not constrained:
            method = "flow"
        elif is_forest(g):
            method = "forest-dp"
        else:
            method = "brute"
            if bipartite:
                _say("kecs: note: weighted or constrained bipartite input, using exact search")
    w = doc.weights
    if method == "flow":
        if weighted or constrained:
            raise UsageError("method flow ignores weights and constraints; use brute or forest-dp")
        coloring = solve_nuk_bipartite(g, k)
    elif method == "forest-dp":
        coloring = solve_forest(g, k, w, doc.constraints)
    elif method == "weighted-flow":
        if constrained:
            raise UsageError("method weighted-flow does not support color constraints")
        unit = w or {e: 1 for e in g.edges}
        keep = solve_weighted_degree_constrained(g, None, k, unit)
        coloring = konig_edge_color(subgraph(g, keep), bipartition(g), k) if keep \
            else KEdgeColoring(k, {})
    else:
        coloring = brute_nuk(g, k, w, doc.constraints, _budget(args, DEFAULT_BUDGET))[1]
    print(coloring.weight(w))
    out = Path(args.output) if args.output else Path(str(args.graph) + ".coloring")
    out.write_text(format_coloring(coloring))
    _say(f"kecs: method={method} colored_edges={len(coloring.edges)} coloring={out}")
    return 0


def _spectrum(args) -> int:
    g = read_kecs(args.graph).graph
    sp = matching_spectrum(g, _budget(args, DEFAULT_ENUM_BUDGET))
    print(f"nu={sp.nu} ell={sp.ell} L={sp.big_l}")
    print(f"maximum_matchings={sp.count}")
    for name, edges in (("ell_witness", sp.ell_witness), ("ell_residual", sp.ell_residual),
                        ("L_witness", sp.big_l_witness), ("L_residual", sp.big_l_residual)):
        print(name, " ".join(f"{u}-{v}" for u, v in edges) or "-")
    return 0


def _reduce(args) -> int:
    cnf = read_dimacs(args.cnf)
    if args.kind == "min2sat":
        inst = build_min2sat_instance(cnf, args.K, args.q)
    else:
        if args.q is not None:
            raise UsageError("--q only applies to min2sat")
        inst = build_max2sat_instance(cnf, args.K)
        if args.kind == "max2sat-colored":
            inst = annotate_color_constraints(inst)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_kecs(out / "graph.kecs", inst.graph, inst.weights, inst.constraints)
    meta = {"kind": inst.kind, "n": cnf.n, **inst.meta}
    (out / "meta.txt").write_text("".join(f"{k}={v}\n" for k, v in meta.items()))
    rows = ["vertex\trole\tclause\tvariable\n"]
    rows += [f"{v}\t{r.tag}\t{r.clause}\t{r.variable}\n" for v, r in sorted(inst.role_map.items())]
    (out / "roles.tsv").write_text("".join(rows))
    print(f"kind={inst.kind} vertices={inst.graph.vertex_count} edges={len(inst.graph.edges)} "
          f"threshold={inst.threshold}")
    return 0


def _verify(args) -> int:
    cnf = read_dimacs(args.cnf)
    budget = _budget(args, VERIFY_BUDGET)
    if args.which == "thm1":
        rep = verify_theorem1(cnf, budget, args.K)
    elif args.which == "lemma2":
        rep = verify_lemma2(cnf, budget)
    else:
        if args.K is None:
            raise UsageError("verify thm3 requires --K")
        rep = verify_theorem3(cnf, args.K, args.q, budget)
    sys.stdout.write(rep.text())
    return rep.exit_code


def _gen(args) -> int:
    g = generators.generate(args.kind, args.n, args.p, args.seed)
    text = format_kecs(g)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def _check(args) -> int:
    doc = read_kecs(args.graph)
    c = read_coloring(args.coloring, args.k)
    report = validate_coloring(doc.graph, c, doc.constraints)
    for v in report:
        if v.kind == "proper":
            print(f"violation proper vertex={v.vertex} color={v.color} count={v.count}")
        else:
            print(f"violation constraint vertex={v.vertex} color={v.color}")
    print("valid" if not report else f"invalid violations={len(report)}")
    print(f"colored_edges={len(c.edges)} weight={c.weight(doc.weights)}")
    return 0 if not report else 4


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kecs", description="Exact solvers for maximum k-edge-colorable subgraphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def budget_flag(sp):
        sp.add_argument("--budget-edges", type=int, default=None,
                        help=f"edge budget for exhaustive search (env {BUDGET_ENV})")

    s = sub.add_parser("solve", help="maximum (weighted, constrained) k-edge-colorable subgraph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("-o", "--output", help="coloring file (default <graph-file>.coloring)")
    budget_flag(s)
    s.add_argument("graph")
    s.set_defaults(func=_solve)

    s = sub.add_parser("spectrum", help="nu, ell and L of a graph")
    budget_flag(s)
    s.add_argument("graph")
    s.set_defaults(func=_spectrum)

    s = sub.add_parser("reduce", help="build a reduction instance from a 2-CNF")
    s.add_argument("kind", choices=(MAX2SAT, "max2sat-colored", "min2sat"))
    s.add_argument("--K", type=int, required=True)
    s.add_argument("--q", type=int, default=None)
    s.add_argument("cnf")
    s.add_argument("out_dir")
    s.set_defaults(func=_reduce)

    s = sub.add_parser("verify", help="check a reduction identity on a 2-CNF")
    s.add_argument("which", choices=("thm1", "lemma2", "thm3"))
    s.add_argument("--K", type=int, default=None)
    s.add_argument("--q", type=int, default=None)
    budget_flag(s)
    s.add_argument("cnf")
    s.set_defaults(func=_verify)

    s = sub.add_parser("gen", help="write a named or seeded random graph")
    s.add_argument("kind", choices=(*generators.NAMED, *generators.RANDOM))
    s.add_argument("--n", type=int, default=8, help="number of vertices")
    s.add_argument("--p", type=float, default=0.5, help="edge probability")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output")
    s.set_defaults(func=_gen)

    s = sub.add_parser("check", help="validate a coloring file against a graph")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("graph")
    s.add_argument("coloring")
    s.set_defaults(func=_check)
    return p


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "k", 1) is not None and getattr(args, "k", 1) < 1:
            raise UsageError("--k must be at least 1")
        return args.func(args)
    except UsageError as exc:
        _say(f"kecs: {exc.tag}: {exc}")
        return 1
    except FormatError as exc:
        _say(f"kecs: {exc.tag}: {exc}")
        return 2
    except BudgetError as exc:
        _say(f"kecs: {exc.tag}: {exc} (best_lower_bound={exc.best_lower_bound}, not optimal)")
        return 3
    except KecsError as exc:
        _say(f"kecs: {exc.tag}: {exc}")
        return 1
    except OSError as exc:
        _say(f"kecs: io-error: {exc}")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
