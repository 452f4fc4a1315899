"""Flat-file formats and the reduction mapping sidecar.

Hypergraph files (hMETIS-flavored, with an explicit terminal line):

    n m          <- node count, edge count
    s t          <- terminals
    v1 v2 ...    <- one line per edge, 1-based node ids

Weights: one line of space-separated rationals ("p/q" or integer), index 0
first; the token "inf" marks a forbidden split.  Graphs: "n m" header then
"u v" lines.  CNF: standard DIMACS.  Reduction artifacts are written as
instance files plus a JSON mapping sidecar so that reduce and verify can run
as separate invocations; relative paths inside the sidecar are resolved
against its own directory.

Blank lines and '#' comments are tolerated on parsing ('c' comments in
DIMACS); emitters always produce the canonical form, so emit(parse(file)) is
byte-identical exactly when the file already is canonical.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (
    Hypergraph,
    SplittingWeights,
    as_weight,
    validate_hypergraph,
    weight_str,
)
from .reductions import (
    AffineCost,
    CnfFormula,
    Graph,
    ReductionArtifact,
    ThresholdCost,
)


class ParseError(ValueError):
    """Syntax or invariant error, addressed to a line of the input."""

    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


def _content_lines(text: str, comment: str = "#"):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith(comment):
            continue
        yield lineno, stripped


def _ints(lineno: int, line: str, expect: int = 0) -> list:
    parts = line.split()
    if expect and len(parts) != expect:
        raise ParseError(lineno, f"expected {expect} fields, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(lineno, f"not an integer: {exc}") from None


# ---------------------------------------------------------------------------
# Hypergraph files.
# ---------------------------------------------------------------------------


def parse_hypergraph(text: str) -> Hypergraph:
    lines = list(_content_lines(text))
    if len(lines) < 2:
        raise ParseError(len(text.splitlines()) + 1, "missing header or terminal line")
    n, m = _ints(*lines[0], expect=2)
    s, t = _ints(*lines[1], expect=2)
    if len(lines) != 2 + m:
        raise ParseError(lines[-1][0], f"expected {m} edge lines, found {len(lines) - 2}")
    edges = []
    for lineno, line in lines[2:]:
        ids = _ints(lineno, line)
        if len(ids) < 2:
            raise ParseError(lineno, "edge needs at least 2 nodes")
        edges.append(tuple(ids))
    h = Hypergraph(n=n, edges=tuple(edges), s=s, t=t)
    problems = validate_hypergraph(h)
    if problems:
        raise ParseError(lines[0][0], "; ".join(problems))
    return h


def emit_hypergraph(h: Hypergraph) -> str:
    out = [f"{h.n} {len(h.edges)}", f"{h.s} {h.t}"]
    out.extend(" ".join(str(v) for v in e) for e in h.edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Weights files.
# ---------------------------------------------------------------------------


def parse_weights(text: str) -> SplittingWeights:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise ParseError(lines[0][0] if lines else 1, "weights file must hold one line")
    lineno, line = lines[0]
    try:
        entries = tuple(as_weight(tok) for tok in line.split())
        return SplittingWeights(entries)
    except (ValueError, TypeError) as exc:
        raise ParseError(lineno, str(exc)) from None


def emit_weights(w: SplittingWeights) -> str:
    return " ".join(weight_str(x) for x in w.entries) + "\n"


# ---------------------------------------------------------------------------
# Graph files.
# ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(1, "missing graph header")
    n, m = _ints(*lines[0], expect=2)
    if len(lines) != 1 + m:
        raise ParseError(lines[-1][0], f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for lineno, line in lines[1:]:
        u, v = _ints(lineno, line, expect=2)
        edges.append((u, v))
    try:
        return Graph(n=n, edges=tuple(edges))
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None


def emit_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# DIMACS CNF files.
# ---------------------------------------------------------------------------


def parse_cnf(text: str) -> CnfFormula:
    num_vars = None
    num_clauses = None
    header_line = 1
    literals: list = []
    clauses: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(lineno, "header must be 'p cnf <vars> <clauses>'")
            num_vars, num_clauses = int(parts[2]), int(parts[3])
            header_line = lineno
            continue
        if num_vars is None:
            raise ParseError(lineno, "clause before 'p cnf' header")
        for tok in stripped.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(tuple(literals))
                literals = []
            else:
                literals.append(lit)
    if num_vars is None:
        raise ParseError(1, "missing 'p cnf' header")
    if literals:
        raise ParseError(len(text.splitlines()), "unterminated clause (missing 0)")
    if len(clauses) != num_clauses:
        raise ParseError(header_line, f"header promises {num_clauses} clauses, found {len(clauses)}")
    try:
        return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))
    except ValueError as exc:
        raise ParseError(header_line, str(exc)) from None


def emit_cnf(cnf: CnfFormula) -> str:
    out = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    out.extend(" ".join(str(l) for l in cl) + " 0" for cl in cnf.clauses)
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Mapping sidecar: everything verify needs to rerun independently.
# ---------------------------------------------------------------------------

_FORMAT_TAG = "cbcut-mapping-v1"


def mapping_dict(artifact: ReductionArtifact, hypergraph_path: str, weights_path: str, source_path: str) -> dict:
    exp = artifact.expected_cost
    if isinstance(exp, AffineCost):
        expected = {"kind": "affine", "A": str(exp.a), "B": str(exp.b)}
    else:
        expected = {"kind": "threshold", "value": str(exp.value)}
    return {
        "format": _FORMAT_TAG,
        "case": artifact.case,
        "k": artifact.k,
        "i": artifact.i,
        "alpha": artifact.alpha,
        "hypergraph": hypergraph_path,
        "weights": weights_path,
        "source_kind": "graph" if isinstance(artifact.source, Graph) else "cnf",
        "source": source_path,
        "terminals": [artifact.hypergraph.s, artifact.hypergraph.t],
        "expected_cost": expected,
        "contraction_groups": [sorted(g) for g in artifact.contraction_groups],
        "node_map": artifact.node_map,
    }


def write_artifact(artifact: ReductionArtifact, prefix: str, source_path: str) -> list:
    """Write prefix.hg / prefix.w / prefix.map.json; returns the paths."""
    hg_path = prefix + ".hg"
    w_path = prefix + ".w"
    map_path = prefix + ".map.json"
    with open(hg_path, "w") as fh:
        fh.write(emit_hypergraph(artifact.hypergraph))
    with open(w_path, "w") as fh:
        fh.write(emit_weights(artifact.weights))
    prefix_dir = os.path.dirname(os.path.abspath(map_path))
    rel_source = source_path if os.path.isabs(source_path) else os.path.relpath(
        os.path.abspath(source_path), start=prefix_dir
    )
    payload = mapping_dict(
        artifact,
        hypergraph_path=os.path.basename(hg_path),
        weights_path=os.path.basename(w_path),
        source_path=rel_source,
    )
    with open(map_path, "w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return [hg_path, w_path, map_path]


@dataclass(frozen=True)
class InstanceBundle:
    """File paths making up one solve instance."""

    hypergraph_path: str
    weights_path: str
    mapping_path: Optional[str] = None


def parse_instance(bundle: InstanceBundle):
    """Parse and validate every referenced file before any solve begins.

    Returns (hypergraph, weights, artifact) with artifact None unless a
    mapping sidecar was given.
    """
    with open(bundle.hypergraph_path) as fh:
        h = parse_hypergraph(fh.read())
    with open(bundle.weights_path) as fh:
        w = parse_weights(fh.read())
    artifact = None
    if bundle.mapping_path is not None:
        artifact = load_artifact(bundle.mapping_path)
    return h, w, artifact


def load_artifact(mapping_path: str) -> ReductionArtifact:
    with open(mapping_path) as fh:
        payload = json.load(fh)
    if payload.get("format") != _FORMAT_TAG:
        raise ParseError(1, f"unknown mapping format {payload.get('format')!r}")
    base = os.path.dirname(os.path.abspath(mapping_path))

    def resolve(path: str) -> str:
        return path if os.path.isabs(path) else os.path.join(base, path)

    with open(resolve(payload["hypergraph"])) as fh:
        h = parse_hypergraph(fh.read())
    with open(resolve(payload["weights"])) as fh:
        w = parse_weights(fh.read())
    with open(resolve(payload["source"])) as fh:
        source_text = fh.read()
    if payload["source_kind"] == "graph":
        source = parse_graph(source_text)
    else:
        source = parse_cnf(source_text)
    exp = payload["expected_cost"]
    if exp["kind"] == "affine":
        expected = AffineCost(a=Fraction(exp["A"]), b=Fraction(exp["B"]))
    else:
        expected = ThresholdCost(value=Fraction(exp["value"]))
    return ReductionArtifact(
        hypergraph=h,
        weights=w,
        node_map={k: int(v) for k, v in payload["node_map"].items()},
        contraction_groups=tuple(frozenset(g) for g in payload["contraction_groups"]),
        case=payload["case"],
        k=int(payload["k"]),
        i=None if payload["i"] is None else int(payload["i"]),
        alpha=int(payload["alpha"]),
        expected_cost=expected,
        source=source,
    )
