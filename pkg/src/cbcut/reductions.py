"""Hardness-reduction instance builders, oracles, and verification.

Three max-cut reductions cover the weight regimes outside the tractable
region (w_2 > 2; a strict decrease w_i > w_{i+1}; a convexity violation
w_{i-1} + w_{i+1} > 2 w_i), each in a general and a k-uniform variant, plus
a 3SAT reduction into 4-uniform hypergraphs that also yields the
no-even-split regime (w_2 = +inf).

Each builder returns a ReductionArtifact: the hypergraph, weights,
terminals, a role-to-node map, the clique contraction groups, and the
expected optimal cost as a function of the source problem's answer.  Every
construction keeps source/sink cliques so large that cutting one is never
optimal; verification therefore solves the contracted instance (cliques as
groups) and compares against the brute-force source oracle:

  max-cut cases:  optimal cost == A + B * maxcut(G), exactly
  3SAT cases:     satisfiable  <=>  optimal cost <= 2N + 4m

Clique sizes alpha are always the smallest integers allowed by each case's
bound, so instances are as small as possible and fully deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .model import Cut, Hypergraph, SplittingWeights, INF, Weight, is_inf, weight_str
from .solvers import DEFAULT_ENUM_LIMIT, TooLargeError, solve_contracted


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; nodes 1..n, edges as canonical (u, v) pairs."""

    n: int
    edges: tuple

    def __post_init__(self):
        canon = []
        seen = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range [1, {self.n}]")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise ValueError(f"duplicate edge ({pair[0]},{pair[1]})")
            seen.add(pair)
            canon.append(pair)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF formula; clauses are triples of nonzero DIMACS literals."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in cl) for cl in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for j, cl in enumerate(clauses):
            if len(cl) != 3:
                raise ValueError(f"clause {j} must have exactly 3 literals")
            vs = set()
            for lit in cl:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range in clause {j}")
                if abs(lit) in vs:
                    raise ValueError(f"repeated variable in clause {j}")
                vs.add(abs(lit))


Assignment = tuple  # of bool, one per variable 1..N


def clause_satisfied(clause, assignment: Assignment) -> bool:
    return any(assignment[abs(l) - 1] == (l > 0) for l in clause)


def formula_satisfied(cnf: CnfFormula, assignment: Assignment) -> bool:
    return all(clause_satisfied(cl, assignment) for cl in cnf.clauses)


@dataclass(frozen=True)
class AffineCost:
    """Expected optimum A + B * c, where c is the source max-cut value."""

    a: Fraction
    b: Fraction


@dataclass(frozen=True)
class ThresholdCost:
    """Expected: satisfiable iff optimum <= value."""

    value: Fraction


ExpectedCost = Union[AffineCost, ThresholdCost]


@dataclass
class ReductionArtifact:
    hypergraph: Hypergraph
    weights: SplittingWeights
    node_map: dict  # role name -> node id
    contraction_groups: tuple  # of frozenset
    case: str  # w2 | monotone | concavity | sat3-finite | sat3-noeven
    k: int  # uniformity; 0 = general/mixed
    i: Optional[int]
    alpha: int
    expected_cost: ExpectedCost
    source: Union[Graph, CnfFormula]


@dataclass(frozen=True)
class VerificationReport:
    passed: bool
    kind: str  # maxcut | sat3
    oracle_value: object  # c* for max cut, bool for 3SAT
    optimum: Weight
    expected: Fraction  # A + B*c* resp. the threshold
    message: str
    degenerate: bool = False


# ---------------------------------------------------------------------------
# Brute-force source oracles.
# ---------------------------------------------------------------------------


def oracle_maxcut(g: Graph, limit: int = DEFAULT_ENUM_LIMIT):
    """Exact maximum cut by enumeration; witness is the lexicographically
    smallest maximizing side vector with node 1 pinned to side 0."""
    if g.n > limit:
        raise TooLargeError(f"graph too large for max-cut oracle: {g.n} > {limit}")
    if g.n == 0:
        return 0, ()
    nbits = g.n - 1  # node 1 fixed on side 0; node 2 is the most significant bit
    best_c = -1
    best_sides = None
    for counter in range(1 << nbits):
        sides = [0] * g.n
        for v in range(2, g.n + 1):
            sides[v - 1] = (counter >> (g.n - v)) & 1
        c = sum(1 for u, v in g.edges if sides[u - 1] != sides[v - 1])
        if c > best_c:
            best_c = c
            best_sides = tuple(sides)
    return best_c, best_sides


def oracle_sat3(cnf: CnfFormula, limit: int = DEFAULT_ENUM_LIMIT):
    """Exhaustive satisfiability check; returns the first satisfying
    assignment in lexicographic order (all-false first, x_N least significant)."""
    n = cnf.num_vars
    if n > limit:
        raise TooLargeError(f"formula too large for 3SAT oracle: {n} > {limit}")
    for counter in range(1 << n):
        assignment = tuple(bool((counter >> (n - i)) & 1) for i in range(1, n + 1))
        if formula_satisfied(cnf, assignment):
            return True, assignment
    return False, None


# ---------------------------------------------------------------------------
# Construction helpers.
# ---------------------------------------------------------------------------


def _ceil_at_least(x: Fraction) -> int:
    return math.ceil(x)


def _int_above(x) -> int:
    return math.floor(x) + 1


@lru_cache(maxsize=None)
def _clique_templates(alpha: int, k: int):
    """All k-subsets of {0..alpha-1} as node-offset tuples and bitmasks."""
    combos = list(itertools.combinations(range(alpha), k))
    masks = [sum(1 << p for p in combo) for combo in combos]
    return combos, masks

def _clique_edges(base: int, alpha: int, k: int, edges: list, masks: list) -> None:
    """Append all k-subsets of nodes base+1..base+alpha (ids and masks)."""
    combos, tmasks = _clique_templates(alpha, k)
    edges.extend(tuple(base + 1 + p for p in combo) for combo in combos)
    masks.extend(tm << base for tm in tmasks)


def _mask_of(nodes) -> int:
    m = 0
    for v in nodes:
        m |= 1 << (v - 1)
    return m


def _finite_max(w: SplittingWeights) -> Fraction:
    vals = [x for x in w.entries if not is_inf(x)]
    return max(vals)


def _uniform_alpha(m: int, w: SplittingWeights, k: int) -> int:
    """Smallest clique size for k-uniform cases: separating two clique nodes
    forces at least alpha (k-1,1)-splits at w_1 each, which must beat any
    clique-respecting cut."""
    bound = max(Fraction(m) * _finite_max(w) / w[1] + 1, Fraction(2 * k + 1))
    return _int_above(bound)


def _pad_weights(w: SplittingWeights, q: int) -> SplittingWeights:
    """Extend with copies of the last entry up to index q (inert for intact
    cliques; only clique-splitting cuts could ever reach the padded range)."""
    if w.q >= q:
        return w
    return SplittingWeights(w.entries + (w.entries[-1],) * (q - w.q))


def _maxcut_scaffold(g: Graph, alpha: int, k: int):
    """Common node layout: S clique 1..alpha, T clique alpha+1..2*alpha,
    graph node v -> 2*alpha + v.  Returns (node_map, groups, edges, masks)."""
    node_map = {}
    for p in range(1, alpha + 1):
        node_map[f"s{p}"] = p
    for p in range(1, alpha + 1):
        node_map[f"t{p}"] = alpha + p
    for v in range(1, g.n + 1):
        node_map[f"x{v}"] = 2 * alpha + v
    s_group = frozenset(range(1, alpha + 1))
    t_group = frozenset(range(alpha + 1, 2 * alpha + 1))
    edges: list = []
    masks: list = []
    clique_k = 2 if k == 0 else k
    _clique_edges(0, alpha, clique_k, edges, masks)
    _clique_edges(alpha, alpha, clique_k, edges, masks)
    return node_map, [s_group, t_group], edges, masks


def _make_hypergraph(n: int, edges, masks, s: int, t: int) -> Hypergraph:
    h = Hypergraph(n=n, edges=tuple(edges), s=s, t=t)
    h.__dict__["edge_masks"] = masks  # pre-computed; matches edges order
    return h


def _append_edge(edges: list, masks: list, members) -> None:
    e = tuple(sorted(members))
    edges.append(e)
    masks.append(_mask_of(e))


# ---------------------------------------------------------------------------
# Max-cut reductions.
# ---------------------------------------------------------------------------


def reduce_maxcut_w2(g: Graph, w2, k: int = 0) -> ReductionArtifact:
    """Instance whose optimum is m*w2 + (2-w2)*maxcut(G), for w2 > 2.

    Per graph edge (x,y) two hyperedges: one with two source-clique nodes,
    one with two sink-clique nodes (k-2 of them in the k-uniform variant).
    A cut graph edge makes both of them (k-1,1)-splits (cost 2); an uncut
    one leaves a single (k-2,2)-split (cost w2).
    """
    w2 = Fraction(w2)
    if w2 <= 2:
        raise ValueError("w2 <= 2 is inside the submodular closure; reduction meaningless")
    if k != 0 and k < 4:
        raise ValueError(f"k must be 0 or >= 4, got {k}")
    m = g.m
    if k == 0:
        alpha = max(_ceil_at_least(m * w2 + 1), 1)
        weights = SplittingWeights((0, 1, w2))
    else:
        weights = SplittingWeights((Fraction(0), Fraction(1)) + (w2,) * (k // 2 - 1))
        alpha = _uniform_alpha(m, weights, k)
    node_map, groups, edges, masks = _maxcut_scaffold(g, alpha, k)
    width = 2 if k == 0 else k - 2
    for x, y in g.edges:
        gx, gy = node_map[f"x{x}"], node_map[f"x{y}"]
        _append_edge(edges, masks, list(range(1, width + 1)) + [gx, gy])
        _append_edge(edges, masks, list(range(alpha + 1, alpha + width + 1)) + [gx, gy])
    h = _make_hypergraph(2 * alpha + g.n, edges, masks, s=1, t=alpha + 1)
    return ReductionArtifact(
        hypergraph=h,
        weights=weights,
        node_map=node_map,
        contraction_groups=tuple(groups),
        case="w2",
        k=k,
        i=None,
        alpha=alpha,
        expected_cost=AffineCost(a=m * w2, b=2 - w2),
        source=g,
    )


def reduce_maxcut_monotone(g: Graph, w: SplittingWeights, i: int, k: int = 0) -> ReductionArtifact:
    """Instance whose optimum is m*w_i + (w_{i+1}-w_i)*maxcut(G), for w_i > w_{i+1}.

    General variant: one hyperedge (s_1..s_i, x, y, t_1..t_i) per graph edge;
    a cut graph edge splits it (i+1, i+1), an uncut one (i+2, i).  k-uniform
    variant: every graph node gets its own clique; the hyperedge takes k-2i-1
    members of x's clique and the first member of y's.
    """
    if any(is_inf(x) for x in w.entries):
        raise ValueError("monotone reduction requires finite weights")
    if k != 0 and k < 4:
        raise ValueError(f"k must be 0 or >= 4, got {k}")
    top = (k // 2 - 1) if k else w.q - 1
    if not (1 <= i <= top):
        raise ValueError(f"index i={i} out of range [1, {top}]")
    if w.q < i + 1:
        raise ValueError(f"weights too short: need w_{i + 1}")
    if not (w[i] > w[i + 1]):
        raise ValueError(f"monotonicity not violated: w_{i}={w[i]} <= w_{i + 1}={w[i + 1]}")
    if w[1] == 0:
        raise ValueError("w_1 = 0 is degenerate; reduction meaningless")
    m = g.m

    if k == 0:
        alpha = max(_ceil_at_least(m * w[i] / w[1] + 1), i)
        node_map, groups, edges, masks = _maxcut_scaffold(g, alpha, 0)
        for x, y in g.edges:
            gx, gy = node_map[f"x{x}"], node_map[f"x{y}"]
            members = list(range(1, i + 1)) + list(range(alpha + 1, alpha + i + 1)) + [gx, gy]
            _append_edge(edges, masks, members)
        h = _make_hypergraph(2 * alpha + g.n, edges, masks, s=1, t=alpha + 1)
        weights = w
    else:
        weights = _pad_weights(w, k // 2)
        alpha = _uniform_alpha(m, weights, k)
        node_map = {}
        for p in range(1, alpha + 1):
            node_map[f"s{p}"] = p
        for p in range(1, alpha + 1):
            node_map[f"t{p}"] = alpha + p
        groups = [frozenset(range(1, alpha + 1)), frozenset(range(alpha + 1, 2 * alpha + 1))]
        edges = []
        masks = []
        _clique_edges(0, alpha, k, edges, masks)
        _clique_edges(alpha, alpha, k, edges, masks)
        # One clique of size alpha per graph node; x{v} aliases its first member.
        for v in range(1, g.n + 1):
            base = 2 * alpha + (v - 1) * alpha
            node_map[f"x{v}"] = base + 1
            for p in range(1, alpha + 1):
                node_map[f"x{v}_{p}"] = base + p
            groups.append(frozenset(range(base + 1, base + alpha + 1)))
            _clique_edges(base, alpha, k, edges, masks)
        for x, y in g.edges:
            bx = 2 * alpha + (x - 1) * alpha
            members = (
                list(range(1, i + 1))
                + list(range(alpha + 1, alpha + i + 1))
                + list(range(bx + 1, bx + (k - 2 * i - 1) + 1))
                + [node_map[f"x{y}"]]
            )
            _append_edge(edges, masks, members)
        h = _make_hypergraph(2 * alpha + g.n * alpha, edges, masks, s=1, t=alpha + 1)

    return ReductionArtifact(
        hypergraph=h,
        weights=weights,
        node_map=node_map,
        contraction_groups=tuple(groups),
        case="monotone",
        k=k,
        i=i,
        alpha=alpha,
        expected_cost=AffineCost(a=m * w[i], b=w[i + 1] - w[i]),
        source=g,
    )


def reduce_maxcut_concavity(g: Graph, w: SplittingWeights, i: int, k: int = 0) -> ReductionArtifact:
    """Instance whose optimum is m*(w_{i-1}+w_{i+1}) + (2w_i - w_{i-1} - w_{i+1})*maxcut(G).

    Requires the convexity violation w_{i-1} + w_{i+1} > 2 w_i.  Two mirrored
    hyperedges per graph edge: a cut graph edge splits both at minority i
    (cost 2 w_i); an uncut one yields minorities i-1 and i+1.
    """
    if any(is_inf(x) for x in w.entries):
        raise ValueError("concavity reduction requires finite weights")
    if k != 0 and k < 4:
        raise ValueError(f"k must be 0 or >= 4, got {k}")
    top = (k // 2 - 1) if k else w.q - 1
    if not (2 <= i <= top):
        raise ValueError(f"index i={i} out of range [2, {top}]")
    if w.q < i + 1:
        raise ValueError(f"weights too short: need w_{i + 1}")
    if not (w[i - 1] + w[i + 1] > 2 * w[i]):
        raise ValueError(
            f"concavity not violated at i={i}: {w[i - 1]} + {w[i + 1]} <= 2*{w[i]}"
        )
    if w[1] == 0:
        raise ValueError("w_1 = 0 is degenerate; reduction meaningless")
    m = g.m
    pair_cost = w[i - 1] + w[i + 1]

    if k == 0:
        alpha = max(_ceil_at_least(m * pair_cost / w[1] + 1), i + 1)
        lo, hi = i - 1, i + 1
        weights = w
    else:
        weights = _pad_weights(w, k // 2)
        alpha = _uniform_alpha(m, weights, k)
        lo, hi = i - 1, k - i - 1
    node_map, groups, edges, masks = _maxcut_scaffold(g, alpha, k)
    for x, y in g.edges:
        gx, gy = node_map[f"x{x}"], node_map[f"x{y}"]
        _append_edge(
            edges, masks,
            list(range(1, lo + 1)) + list(range(alpha + 1, alpha + hi + 1)) + [gx, gy],
        )
        _append_edge(
            edges, masks,
            list(range(1, hi + 1)) + list(range(alpha + 1, alpha + lo + 1)) + [gx, gy],
        )
    h = _make_hypergraph(2 * alpha + g.n, edges, masks, s=1, t=alpha + 1)
    return ReductionArtifact(
        hypergraph=h,
        weights=weights,
        node_map=node_map,
        contraction_groups=tuple(groups),
        case="concavity",
        k=k,
        i=i,
        alpha=alpha,
        expected_cost=AffineCost(a=m * pair_cost, b=2 * w[i] - pair_cost),
        source=g,
    )


# ---------------------------------------------------------------------------
# 3SAT reduction (4-uniform).
# ---------------------------------------------------------------------------


def reduce_sat3(cnf: CnfFormula, mode: str = "finite") -> ReductionArtifact:
    """4-uniform instance with optimum <= 2N+4m iff the formula is satisfiable.

    Variable edges pair each literal node with its negation through both
    terminal cliques (no conflict without even splits); per clause j, nodes
    z_j, z_j' are tied together by a linking edge and three clause edges
    force z_j = (not a and not b) -> c.  mode "finite" uses w_2 = 2N+4m+1,
    just above the threshold; mode "noeven" forbids even splits outright
    (w_2 = +inf).
    """
    if mode not in ("finite", "noeven"):
        raise ValueError(f"mode must be 'finite' or 'noeven', got {mode!r}")
    n_vars, m = cnf.num_vars, len(cnf.clauses)
    alpha = 2 * n_vars + 4 * m + 1
    threshold = Fraction(2 * n_vars + 4 * m)
    w2 = Fraction(alpha) if mode == "finite" else INF
    weights = SplittingWeights((Fraction(0), Fraction(1), w2))

    node_map = {}
    for p in range(1, alpha + 1):
        node_map[f"s{p}"] = p
    for p in range(1, alpha + 1):
        node_map[f"t{p}"] = alpha + p
    base = 2 * alpha
    for v in range(1, n_vars + 1):
        node_map[f"x{v}"] = base + 2 * v - 1
        node_map[f"nx{v}"] = base + 2 * v
    zbase = base + 2 * n_vars
    for j in range(1, m + 1):
        node_map[f"z{j}"] = zbase + 2 * j - 1
        node_map[f"zp{j}"] = zbase + 2 * j

    def lit_node(lit: int) -> int:
        return node_map[f"x{lit}"] if lit > 0 else node_map[f"nx{-lit}"]

    edges: list = []
    masks: list = []
    if alpha >= 4:
        _clique_edges(0, alpha, 4, edges, masks)
        _clique_edges(alpha, alpha, 4, edges, masks)
    for v in range(1, n_vars + 1):
        xv, nxv = node_map[f"x{v}"], node_map[f"nx{v}"]
        _append_edge(edges, masks, [1, 2, xv, nxv])
        _append_edge(edges, masks, [alpha + 1, alpha + 2, xv, nxv])
    for j, (a, b, c) in enumerate(cnf.clauses, start=1):
        zj, zpj = node_map[f"z{j}"], node_map[f"zp{j}"]
        _append_edge(edges, masks, [1, zj, zpj, alpha + 1])
        _append_edge(edges, masks, [1, lit_node(-a), zj, lit_node(-b)])
        _append_edge(edges, masks, [1, lit_node(-a), zj, zpj])
        _append_edge(edges, masks, [1, lit_node(c), zj, zpj])

    h = _make_hypergraph(zbase + 2 * m, edges, masks, s=1, t=alpha + 1)
    groups = (
        frozenset(range(1, alpha + 1)),
        frozenset(range(alpha + 1, 2 * alpha + 1)),
    )
    return ReductionArtifact(
        hypergraph=h,
        weights=weights,
        node_map=node_map,
        contraction_groups=groups,
        case=f"sat3-{mode}",
        k=4,
        i=None,
        alpha=alpha,
        expected_cost=ThresholdCost(value=threshold),
        source=cnf,
    )


# ---------------------------------------------------------------------------
# Back-extraction and verification.
# ---------------------------------------------------------------------------


def extract_solution(artifact: ReductionArtifact, cut: Cut):
    """Recover the source-problem solution from a cut of the reduced instance.

    Max-cut cases return (sides, c): side per graph node (0 = source side)
    and the number of cut graph edges.  3SAT cases return the Assignment
    that puts sink-side variables at true.
    """
    h = artifact.hypergraph
    src = cut.source_side
    if h.s not in src or h.t in src:
        raise ValueError("invalid terminal placement")
    for group in artifact.contraction_groups:
        inside = len(group & src)
        if 0 < inside < len(group):
            raise ValueError("extraction undefined: clique cut")
    if isinstance(artifact.source, Graph):
        g = artifact.source
        sides = tuple(0 if artifact.node_map[f"x{v}"] in src else 1 for v in range(1, g.n + 1))
        c = sum(1 for u, v in g.edges if sides[u - 1] != sides[v - 1])
        return sides, c
    cnf = artifact.source
    return tuple(
        artifact.node_map[f"x{v}"] not in src for v in range(1, cnf.num_vars + 1)
    )


def verify_reduction(
    artifact: ReductionArtifact,
    enum_limit: int = DEFAULT_ENUM_LIMIT,
    oracle_limit: int = DEFAULT_ENUM_LIMIT,
) -> VerificationReport:
    """Solve the contracted instance and compare with the source oracle."""
    h, w = artifact.hypergraph, artifact.weights
    groups = artifact.contraction_groups

    if isinstance(artifact.source, Graph):
        exp = artifact.expected_cost
        if exp.b == 0:
            return VerificationReport(
                passed=False,
                kind="maxcut",
                oracle_value=None,
                optimum=INF,
                expected=exp.a,
                message="boundary weights carry no signal (B = 0)",
                degenerate=True,
            )
        c_star, _ = oracle_maxcut(artifact.source, limit=oracle_limit)
        sol = solve_contracted(h, w, groups, limit=enum_limit)
        expected = exp.a + exp.b * c_star
        _, c_got = extract_solution(artifact, sol.cut)
        passed = sol.cost == expected and c_got == c_star
        msg = "ok" if passed else (
            f"optimum {weight_str(sol.cost)} vs expected {expected}; extracted c={c_got}"
        )
        return VerificationReport(
            passed=passed,
            kind="maxcut",
            oracle_value=c_star,
            optimum=sol.cost,
            expected=expected,
            message=msg,
        )

    cnf = artifact.source
    threshold = artifact.expected_cost.value
    satisfiable, _ = oracle_sat3(cnf, limit=oracle_limit)
    sol = solve_contracted(h, w, groups, limit=enum_limit)
    below = not is_inf(sol.cost) and sol.cost <= threshold
    passed = satisfiable == below
    if passed and satisfiable:
        assignment = extract_solution(artifact, sol.cut)
        if not formula_satisfied(cnf, assignment):
            passed = False
    msg = "ok" if passed else (
        f"satisfiable={satisfiable} but optimum {weight_str(sol.cost)} "
        f"vs threshold {threshold}"
    )
    return VerificationReport(
        passed=passed,
        kind="sat3",
        oracle_value=satisfiable,
        optimum=sol.cost,
        expected=threshold,
        message=msg,
    )
