"""Minimum cardinality-based s-t cut solvers.

Three routes to the optimum:

* solve_brute       — exhaustive over all placements of non-terminal nodes;
* solve_contracted  — exhaustive over cuts that keep given node groups whole
                      (the executable form of "cliques are never cut");
* solve_submodular  — polynomial time via gadget reduction to directed
                      min-cut, valid inside the submodular weight region.

Every solver re-evaluates its answer through cut_cost on the extracted node
assignment, so scaling or extraction bugs surface as hard failures rather
than silently corrupted optima.  Exhaustive tie-breaking is always the
lexicographically smallest source-side bit vector, which makes output
byte-identical across runs.

The gadget for a decomposition term (j, c) on edge e adds auxiliary nodes
u, v with arcs x->u of capacity c for each x in e, u->v of capacity c*j and
v->x of capacity c.  Its isolated minimum cut contribution for a split with
i nodes of e on the source side is c*min(i, |e|-i, j) = c*min(minority, j);
summed over terms this reproduces w_minority exactly.  That identity is
never assumed: gadget_cost_oracle re-derives it by enumeration.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .flow import FlowNetwork, max_flow_min_cut, scale_to_integer_capacities
from .model import (
    Cut,
    Hypergraph,
    INF,
    SplittingWeights,
    Weight,
    cut_cost,
    is_inf,
    normalize_weights,
)
from .region import NotSubmodularError, Violated, classify, gadget_decompose

DEFAULT_ENUM_LIMIT = 26

_NUMPY_MIN_BITS = 14
_CHUNK_BITS = 18
_INT64_SAFE = 1 << 62


class TooLargeError(RuntimeError):
    """Instance exceeds the configured enumeration limit."""


@dataclass(frozen=True)
class CutSolution:
    cut: Cut
    cost: Weight
    method: str  # brute | contracted | gadget | degenerate


@dataclass(frozen=True)
class GadgetTerm:
    edge_index: int
    j: int
    coeff: Fraction
    u: int  # network ids of the auxiliary pair
    v: int


@dataclass(frozen=True)
class GadgetPlan:
    terms: tuple


# ---------------------------------------------------------------------------
# Exhaustive enumeration over side assignments of "units" (single nodes or
# contraction groups).  Units are ordered by smallest member; counter bit
# (f-1-i) drives unit i, so ascending counters scan source-side bit vectors
# in lexicographic order and the first minimum found is the canonical one.
# ---------------------------------------------------------------------------


def _weight_tables(w: SplittingWeights, r_max: int):
    """Scaled integer weight prefix plus infinity flags, common denominator."""
    q = r_max // 2
    if w.q < q:
        raise ValueError(f"weights shorter than floor(r_max/2): q={w.q} < {q}")
    prefix = list(w.entries[: q + 1])
    finite = [x for x in prefix if not is_inf(x)]
    denom = math.lcm(*(x.denominator for x in finite)) if finite else 1
    scaled = [None if is_inf(x) else int(x * denom) for x in prefix]
    return scaled, denom


def _edge_luts(size: int, scaled):
    """Per-edge lookup over source-side count a: cost and infinity flag."""
    lut = []
    inf_lut = []
    for a in range(size + 1):
        val = scaled[min(a, size - a)]
        lut.append(0 if val is None else val)
        inf_lut.append(1 if val is None else 0)
    return lut, inf_lut


def _enumerate_min(h: Hypergraph, w: SplittingWeights, units, limit: int):
    """Minimum cut over all side assignments of free units.

    units: list of disjoint frozensets covering 1..n, one containing s and
    one containing t.  Returns (cost, source_mask).
    """
    scaled, denom = _weight_tables(w, h.r_max)

    s_unit = next(u for u in units if h.s in u)
    t_unit = next(u for u in units if h.t in u)
    free = sorted((u for u in units if u is not s_unit and u is not t_unit), key=min)
    f = len(free)
    if f > limit:
        raise TooLargeError(f"{f} free units exceed enumeration limit {limit}")

    node_unit = {}  # node -> free unit index; terminals' units stay out
    for i, u in enumerate(free):
        for v in u:
            node_unit[v] = i
    unit_masks = [sum(1 << (v - 1) for v in u) for u in free]
    s_mask = sum(1 << (v - 1) for v in s_unit)

    # Edges inside a single unit are never cut and contribute w_0 = 0.
    spanning = []
    for e in h.edges:
        owners = set()
        fixed_s = 0
        mults = {}
        for v in e:
            if v in s_unit:
                owners.add("s")
                fixed_s += 1
            elif v in t_unit:
                owners.add("t")
            else:
                i = node_unit[v]
                owners.add(i)
                mults[i] = mults.get(i, 0) + 1
        if len(owners) > 1:
            spanning.append((len(e), fixed_s, sorted(mults.items())))

    if not spanning:
        return (Fraction(0), s_mask)

    use_numpy = f >= _NUMPY_MIN_BITS and _numpy_safe(spanning, scaled)
    if use_numpy:
        best_counter, best_cost = _scan_numpy(spanning, scaled, f)
    else:
        best_counter, best_cost = _scan_python(spanning, scaled, f)

    source_mask = s_mask
    for i in range(f):
        if (best_counter >> (f - 1 - i)) & 1:
            source_mask |= unit_masks[i]
    cost = INF if best_cost is None else Fraction(best_cost, denom)
    return (cost, source_mask)


def _scan_python(spanning, scaled, f: int):
    tables = [(_edge_luts(size, scaled), fixed_s, mults) for size, fixed_s, mults in spanning]
    best_cost = None  # None while only infinite cuts seen
    best_counter = 0
    for counter in range(1 << f):
        cost = 0
        hit_inf = False
        for (lut, inf_lut), fixed_s, mults in tables:
            a = fixed_s
            for i, mult in mults:
                a += mult * ((counter >> (f - 1 - i)) & 1)
            if inf_lut[a]:
                hit_inf = True
                break
            cost += lut[a]
        if not hit_inf and (best_cost is None or cost < best_cost):
            best_cost = cost
            best_counter = counter
    return best_counter, best_cost


def _numpy_safe(spanning, scaled) -> bool:
    if any(size >= (1 << 15) for size, _, _ in spanning):  # int16 counters
        return False
    bound = 0
    for size, _, _ in spanning:
        finite = [scaled[min(a, size - a)] for a in range(size + 1)]
        finite = [v for v in finite if v is not None]
        bound += max(finite) if finite else 0
    return bound < _INT64_SAFE


def _scan_numpy(spanning, scaled, f: int):
    chunk = 1 << min(f, _CHUNK_BITS)
    best_cost = None
    best_counter = 0
    saw_finite = False
    for lo in range(0, 1 << f, chunk):
        masks = np.arange(lo, lo + chunk, dtype=np.uint64)
        cost = np.zeros(chunk, dtype=np.int64)
        inf_hits = np.zeros(chunk, dtype=np.int32)
        for size, fixed_s, mults in spanning:
            lut, inf_lut = _edge_luts(size, scaled)
            a = np.full(chunk, fixed_s, dtype=np.int16)
            for i, mult in mults:
                shift = np.uint64(f - 1 - i)
                a += ((masks >> shift) & np.uint64(1)).astype(np.int16) * np.int16(mult)
            cost += np.take(np.asarray(lut, dtype=np.int64), a)
            inf_hits += np.take(np.asarray(inf_lut, dtype=np.int32), a)
        finite = inf_hits == 0
        if finite.any():
            masked = np.where(finite, cost, np.iinfo(np.int64).max)
            pos = int(np.argmin(masked))
            val = int(masked[pos])
            if not saw_finite or val < best_cost:
                best_cost = val
                best_counter = lo + pos
            saw_finite = True
    if not saw_finite:
        return 0, None
    return best_counter, best_cost


def _mask_to_cut(mask: int) -> Cut:
    nodes = set()
    v = 1
    while mask:
        if mask & 1:
            nodes.add(v)
        mask >>= 1
        v += 1
    return Cut(frozenset(nodes))


def _finish(h: Hypergraph, w: SplittingWeights, cost, mask: int, method: str) -> CutSolution:
    cut = _mask_to_cut(mask)
    recomputed = cut_cost(h, w, cut)
    if recomputed != cost:
        raise AssertionError(
            f"solver cost {cost} disagrees with cut_cost {recomputed} ({method})"
        )
    return CutSolution(cut=cut, cost=recomputed, method=method)


def solve_brute(h: Hypergraph, w: SplittingWeights, limit: int = DEFAULT_ENUM_LIMIT) -> CutSolution:
    """Exhaustive minimum over all 2^(n-2) placements of non-terminal nodes."""
    if h.n - 2 > limit:
        raise TooLargeError(f"too large for exhaustive solve: {h.n - 2} free nodes > {limit}")
    units = [frozenset([v]) for v in range(1, h.n + 1)]
    cost, mask = _enumerate_min(h, w, units, limit)
    return _finish(h, w, cost, mask, "brute")


def solve_contracted(
    h: Hypergraph,
    w: SplittingWeights,
    groups,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> CutSolution:
    """Minimum over cuts that keep each group on one side.

    Groups must be disjoint; s and t may not share a group.  Ungrouped nodes
    are free singletons.  The optimum can only be >= the unrestricted one.
    """
    groups = [frozenset(g) for g in groups]
    seen = set()
    for g in groups:
        if not g:
            raise ValueError("empty contraction group")
        for v in g:
            if not (1 <= v <= h.n):
                raise ValueError(f"group node {v} out of range [1, {h.n}]")
            if v in seen:
                raise ValueError(f"overlapping groups at node {v}")
            seen.add(v)
        if h.s in g and h.t in g:
            raise ValueError("s and t may not lie in one group")
    units = list(groups) + [frozenset([v]) for v in range(1, h.n + 1) if v not in seen]
    cost, mask = _enumerate_min(h, w, units, limit)
    return _finish(h, w, cost, mask, "contracted")


# ---------------------------------------------------------------------------
# Gadget route: reduce submodular instances to directed min-cut.
# ---------------------------------------------------------------------------


def build_gadget_network(h: Hypergraph, w: SplittingWeights):
    """Directed network whose min s-t cut solves the hypergraph instance.

    Returns (network, node_map, plan, scale): node_map sends original node
    ids to network ids, plan records the per-edge auxiliary construction and
    scale is the single factor that made all capacities integral.
    """
    norm = normalize_weights(w)
    if norm is None:
        raise NotSubmodularError("degenerate weights (w_1 = 0); use solve_auto")
    node_map = {v: v - 1 for v in range(1, h.n + 1)}
    if not h.edges:
        net = FlowNetwork(num_nodes=h.n, arcs=(), source=h.s - 1, sink=h.t - 1)
        return net, node_map, GadgetPlan(terms=()), 1

    base_terms = gadget_decompose(norm, h.r_max)

    terms = []
    arcs = []  # (tail, head, capacity as Fraction)
    next_id = h.n
    for ei, e in enumerate(h.edges):
        for j, c in base_terms:
            u, v = next_id, next_id + 1
            next_id += 2
            terms.append(GadgetTerm(edge_index=ei, j=j, coeff=c, u=u, v=v))
            for x in e:
                arcs.append((node_map[x], u, c))
            arcs.append((u, v, c * j))
            for x in e:
                arcs.append((v, node_map[x], c))

    ints, scale = scale_to_integer_capacities([cap for _, _, cap in arcs])
    scaled_arcs = tuple((tail, head, cap) for (tail, head, _), cap in zip(arcs, ints))
    net = FlowNetwork(num_nodes=next_id, arcs=scaled_arcs, source=h.s - 1, sink=h.t - 1)
    return net, node_map, GadgetPlan(terms=tuple(terms)), scale


def gadget_cost_oracle(r: int, terms, i: int) -> Fraction:
    """Minimum gadget capacity for an isolated edge of size r split i : r-i.

    Places i edge nodes on the source side and r-i on the sink side, then
    enumerates all 2^(2*#terms) placements of the auxiliary node pairs and
    returns the cheapest total of cut arcs.  Independent of both the flow
    solver and the closed-form decomposition, so it can referee them.
    """
    if not (0 <= i <= r // 2):
        raise ValueError(f"minority size {i} out of range for edge size {r}")
    terms = [(int(j), Fraction(c)) for j, c in terms]
    denom = math.lcm(*(c.denominator for _, c in terms)) if terms else 1
    per_term = []
    for j, c in terms:
        ci = int(c * denom)
        # Placement index: bit 0 = u on source side, bit 1 = v on source side.
        costs = []
        for placement in range(4):
            u_src = placement & 1
            v_src = (placement >> 1) & 1
            cost = 0
            if not u_src:
                cost += i * ci  # arcs x->u for source-side x
            if u_src and not v_src:
                cost += ci * j  # middle arc u->v
            if v_src:
                cost += (r - i) * ci  # arcs v->x for sink-side x
            costs.append(cost)
        per_term.append(costs)
    best = None
    for placements in itertools.product(range(4), repeat=len(per_term)):
        total = sum(costs[p] for costs, p in zip(per_term, placements))
        if best is None or total < best:
            best = total
    return Fraction(best if best is not None else 0, denom)


def solve_submodular(h: Hypergraph, w: SplittingWeights) -> CutSolution:
    """Polynomial-time exact solve for weights inside the submodular region.

    Builds the gadget network, runs max-flow/min-cut, restricts the returned
    source side to original nodes and re-evaluates its cost with the original
    (unnormalized) weights — the raw flow value is never reported.
    """
    norm = normalize_weights(w)
    if norm is None:
        raise NotSubmodularError("degenerate weights (w_1 = 0); use solve_auto")
    if h.edges:
        verdict = classify(norm, h.r_max)
        if isinstance(verdict, Violated):
            raise NotSubmodularError(
                f"inequality ({verdict.inequality}) violated at j={verdict.index}; "
                "use solve_brute or solve_contracted"
            )
    net, node_map, _, _ = build_gadget_network(h, w)
    _, side = max_flow_min_cut(net)
    source_side = frozenset(v for v, nid in node_map.items() if nid in side)
    cut = Cut(source_side)
    cost = cut_cost(h, w, cut)
    return CutSolution(cut=cut, cost=cost, method="gadget")


def _submodular_applies(w: SplittingWeights, r_max: int) -> bool:
    if r_max == 0:
        return True
    try:
        norm = normalize_weights(w)
        if norm is None:
            return False
        verdict = classify(norm, r_max)
    except ValueError:  # infinite entries are never submodular
        return False
    return not isinstance(verdict, Violated)


def solve_auto(
    h: Hypergraph,
    w: SplittingWeights,
    method: str = "auto",
    groups=None,
    limit: int = DEFAULT_ENUM_LIMIT,
) -> CutSolution:
    """Dispatch to the cheapest applicable exact solver.

    auto order: degenerate w_1 = 0 shortcut (S = {s} costs zero), then the
    gadget route when the weights are submodular, then brute force within the
    enumeration limit.
    """
    if method == "brute":
        return solve_brute(h, w, limit=limit)
    if method == "contracted":
        if groups is None:
            raise ValueError("contracted method requires groups")
        return solve_contracted(h, w, groups, limit=limit)
    if method == "gadget":
        return solve_submodular(h, w)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")

    if w[1] == 0:
        cut = Cut(frozenset([h.s]))
        return CutSolution(cut=cut, cost=cut_cost(h, w, cut), method="degenerate")
    if _submodular_applies(w, h.r_max):
        return solve_submodular(h, w)
    if h.n - 2 <= limit:
        return solve_brute(h, w, limit=limit)
    raise TooLargeError("exact solve infeasible; provide contraction groups")
