"""Command-line interface.

Subcommands: solve, classify, gadget-check, reduce maxcut, reduce sat3,
verify, gen graph, gen cnf.  Exit codes: 0 success / verification PASS,
1 verification FAIL, 2 usage or parse error, 3 infeasible or over the
enumeration limit.  All output is deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import formats
from .model import normalize_weights, weight_str
from .randgen import random_cnf, random_graph
from .reductions import (
    reduce_maxcut_concavity,
    reduce_maxcut_monotone,
    reduce_maxcut_w2,
    reduce_sat3,
    verify_reduction,
)
from .region import NotSubmodularError, Submodular, classify, gadget_decompose
from .solvers import DEFAULT_ENUM_LIMIT, TooLargeError, gadget_cost_oracle, solve_auto

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _load_weights(path: str):
    return formats.parse_weights(_read(path))


def _parse_groups(text: str):
    groups = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        groups.append(frozenset(int(tok) for tok in part.replace(",", " ").split()))
    return groups


def _cmd_solve(args) -> int:
    bundle = formats.InstanceBundle(
        hypergraph_path=args.hypergraph, weights_path=args.weights
    )
    h, w, _ = formats.parse_instance(bundle)
    groups = _parse_groups(args.groups) if args.groups else None
    sol = solve_auto(h, w, method=args.method, groups=groups, limit=args.limit)
    print(f"cost {weight_str(sol.cost)}")
    print(" ".join(str(v) for v in sorted(sol.cut.source_side)))
    return EXIT_OK


def _cmd_classify(args) -> int:
    w = _load_weights(args.weights)
    norm = normalize_weights(w)
    if norm is None:
        print("DEGENERATE")
        print("w_1 = 0: separating s from all other nodes is a zero-cost cut")
        return EXIT_OK
    verdict = classify(norm, args.edge_size)
    if isinstance(verdict, Submodular):
        print("SUBMODULAR")
        for j, c in verdict.coefficients:
            print(f"c[{j}] = {c}")
    else:
        print(
            f"VIOLATED inequality=({verdict.inequality}) j={verdict.index} "
            f"lhs={verdict.lhs} rhs={verdict.rhs}"
        )
    return EXIT_OK


def _cmd_gadget_check(args) -> int:
    w = _load_weights(args.weights)
    norm = normalize_weights(w)
    if norm is None:
        print("DEGENERATE")
        return EXIT_INFEASIBLE
    terms = gadget_decompose(norm, args.edge_size)
    ok = True
    for i in range(args.edge_size // 2 + 1):
        got = gadget_cost_oracle(args.edge_size, terms, i)
        match = got == norm[i]
        ok = ok and match
        print(f"i={i} w={norm[i]} gadget={got} {'ok' if match else 'MISMATCH'}")
    print("OK" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_reduce_maxcut(args) -> int:
    g = formats.parse_graph(_read(args.graph))
    if args.case == "w2":
        if args.w2 is None:
            raise ValueError("case w2 requires --w2")
        artifact = reduce_maxcut_w2(g, Fraction(args.w2), k=args.k)
    else:
        if args.weights is None or args.i is None:
            raise ValueError(f"case {args.case} requires --weights and --i")
        w = _load_weights(args.weights)
        if args.case == "monotone":
            artifact = reduce_maxcut_monotone(g, w, args.i, k=args.k)
        else:
            artifact = reduce_maxcut_concavity(g, w, args.i, k=args.k)
    exp = artifact.expected_cost
    print(
        f"case={artifact.case} k={artifact.k} alpha={artifact.alpha} "
        f"nodes={artifact.hypergraph.n} edges={len(artifact.hypergraph.edges)}"
    )
    print(f"expected cost = {exp.a} + ({exp.b})*c  [c = max-cut value of the source graph]")
    for path in formats.write_artifact(artifact, args.output, args.graph):
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_reduce_sat3(args) -> int:
    cnf = formats.parse_cnf(_read(args.cnf))
    artifact = reduce_sat3(cnf, mode=args.mode)
    print(
        f"case={artifact.case} alpha={artifact.alpha} "
        f"nodes={artifact.hypergraph.n} edges={len(artifact.hypergraph.edges)}"
    )
    print(f"expected: satisfiable iff optimum <= {artifact.expected_cost.value}")
    for path in formats.write_artifact(artifact, args.output, args.cnf):
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    artifact = formats.load_artifact(args.mapping)
    report = verify_reduction(artifact, enum_limit=args.limit, oracle_limit=args.limit)
    status = "PASS" if report.passed else "FAIL"
    if report.degenerate:
        print(f"FAIL degenerate: {report.message}")
        return EXIT_FAIL
    if report.kind == "maxcut":
        print(
            f"{status} expected={report.expected} got={weight_str(report.optimum)} "
            f"oracle_c={report.oracle_value}"
        )
    else:
        sat = "yes" if report.oracle_value else "no"
        print(
            f"{status} satisfiable={sat} threshold={report.expected} "
            f"got={weight_str(report.optimum)}"
        )
    return EXIT_OK if report.passed else EXIT_FAIL


def _write_out(text: str, path) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


def _cmd_gen_graph(args) -> int:
    g = random_graph(args.seed, args.nodes, args.edges)
    _write_out(formats.emit_graph(g), args.output)
    return EXIT_OK


def _cmd_gen_cnf(args) -> int:
    cnf = random_cnf(args.seed, args.vars, args.clauses)
    _write_out(formats.emit_cnf(cnf), args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbcut",
        description="Cardinality-based hypergraph minimum s-t cut toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a minimum cut instance")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--weights", required=True)
    p.add_argument("--method", choices=["auto", "brute", "contracted", "gadget"], default="auto")
    p.add_argument("--groups", help="contraction groups, e.g. '1,2,3;4,5'")
    p.add_argument("--limit", type=int, default=DEFAULT_ENUM_LIMIT)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("classify", help="submodular-region membership of a weight vector")
    p.add_argument("--weights", required=True)
    p.add_argument("--edge-size", type=int, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gadget-check", help="verify the gadget decomposition by enumeration")
    p.add_argument("--weights", required=True)
    p.add_argument("--edge-size", type=int, required=True)
    p.set_defaults(func=_cmd_gadget_check)

    p = sub.add_parser("reduce", help="build a hardness-reduction instance")
    reduce_sub = p.add_subparsers(dest="reduction", required=True)

    pm = reduce_sub.add_parser("maxcut", help="max-cut reduction (cases w2, monotone, concavity)")
    pm.add_argument("--graph", required=True)
    pm.add_argument("--case", choices=["w2", "monotone", "concavity"], required=True)
    pm.add_argument("--w2", help="weight w_2 > 2 (case w2)")
    pm.add_argument("--weights", help="weights file (cases monotone/concavity)")
    pm.add_argument("--i", type=int, help="violated index (cases monotone/concavity)")
    pm.add_argument("--k", type=int, default=0, help="uniformity; 0 = general")
    pm.add_argument("-o", "--output", required=True, help="output path prefix")
    pm.set_defaults(func=_cmd_reduce_maxcut)

    ps = reduce_sub.add_parser("sat3", help="3SAT reduction into a 4-uniform hypergraph")
    ps.add_argument("--cnf", required=True)
    ps.add_argument("--mode", choices=["finite", "noeven"], default="finite")
    ps.add_argument("-o", "--output", required=True, help="output path prefix")
    ps.set_defaults(func=_cmd_reduce_sat3)

    p = sub.add_parser("verify", help="verify a reduction against its source oracle")
    p.add_argument("--mapping", required=True)
    p.add_argument("--limit", type=int, default=DEFAULT_ENUM_LIMIT)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("gen", help="seeded random instance generators")
    gen_sub = p.add_subparsers(dest="generator", required=True)

    pg = gen_sub.add_parser("graph", help="random simple graph")
    pg.add_argument("--seed", type=int, required=True)
    pg.add_argument("--nodes", type=int, required=True)
    pg.add_argument("--edges", type=int, required=True)
    pg.add_argument("-o", "--output")
    pg.set_defaults(func=_cmd_gen_graph)

    pc = gen_sub.add_parser("cnf", help="random 3-CNF formula")
    pc.add_argument("--seed", type=int, required=True)
    pc.add_argument("--vars", type=int, required=True)
    pc.add_argument("--clauses", type=int, required=True)
    pc.add_argument("-o", "--output")
    pc.set_defaults(func=_cmd_gen_cnf)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except formats.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NotSubmodularError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
