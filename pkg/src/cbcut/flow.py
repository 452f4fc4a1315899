"""Exact maximum flow / minimum cut on directed networks with integer capacities.

Dinic's algorithm over Python integers: capacities are unbounded-precision,
so no overflow is possible and results are exact.  The solver is fully
deterministic — arcs are processed in insertion order — and the returned
minimum cut is always the set of nodes reachable from the source in the
final residual graph.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class FlowNetwork:
    """Directed network on nodes 0..num_nodes-1 with nonnegative integer capacities.

    Parallel arcs are permitted and act additively.  Arcs into the source or
    out of the sink are allowed.
    """

    num_nodes: int
    arcs: tuple  # of (tail, head, capacity)
    source: int
    sink: int

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(tuple(a) for a in self.arcs))
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for tail, head, cap in self.arcs:
            if not (0 <= tail < self.num_nodes and 0 <= head < self.num_nodes):
                raise ValueError(f"arc ({tail},{head}) endpoint out of range")
            if not isinstance(cap, int) or cap < 0:
                raise ValueError(f"arc ({tail},{head}) capacity {cap!r} not a nonnegative integer")


def scale_to_integer_capacities(values) -> tuple:
    """Scale finite nonnegative rationals to integers by one common factor.

    Returns (integers, scale) with scale the lcm of all denominators, so
    integers[k] = values[k] * scale exactly.
    """
    values = [Fraction(v) for v in values]
    if any(v < 0 for v in values):
        raise ValueError("capacities must be nonnegative")
    scale = math.lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * scale) for v in values]
    return ints, scale


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head = [[] for _ in range(n)]  # adjacency: arc indices
        self.to = []
        self.cap = []

    def add_arc(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def bfs(self, s: int, t: int) -> bool:
        self.level = [-1] * self.n
        self.level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and self.level[v] < 0:
                    self.level[v] = self.level[u] + 1
                    queue.append(v)
        return self.level[t] >= 0

    def dfs(self, s: int, t: int) -> int:
        # Iterative blocking-flow search with per-node arc pointers.
        total = 0
        while True:
            path = []
            u = s
            while u != t:
                advanced = False
                while self.ptr[u] < len(self.head[u]):
                    idx = self.head[u][self.ptr[u]]
                    v = self.to[idx]
                    if self.cap[idx] > 0 and self.level[v] == self.level[u] + 1:
                        path.append(idx)
                        u = v
                        advanced = True
                        break
                    self.ptr[u] += 1
                if not advanced:
                    if u == s:
                        return total
                    dead = path.pop()
                    u = self.to[dead ^ 1]  # tail of the dead-end arc
                    self.ptr[u] += 1
            bottleneck = min(self.cap[idx] for idx in path)
            for idx in path:
                self.cap[idx] -= bottleneck
                self.cap[idx ^ 1] += bottleneck
            total += bottleneck

    def run(self, s: int, t: int) -> int:
        flow = 0
        while self.bfs(s, t):
            self.ptr = [0] * self.n
            flow += self.dfs(s, t)
        return flow

    def residual_source_side(self, s: int) -> frozenset:
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for idx in self.head[u]:
                v = self.to[idx]
                if self.cap[idx] > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return frozenset(seen)


def max_flow_min_cut(net: FlowNetwork) -> tuple:
    """Exact max flow and the source-reachable minimum cut.

    Returns (flow_value, source_side) where source_side is the node set
    reachable from the source in the final residual graph; its cut capacity
    equals flow_value.
    """
    solver = _Dinic(net.num_nodes)
    for tail, head, cap in net.arcs:
        if cap > 0 and tail != head:
            solver.add_arc(tail, head, cap)
    value = solver.run(net.source, net.sink)
    side = solver.residual_source_side(net.source)
    return value, side


def cut_capacity(net: FlowNetwork, source_side) -> int:
    """Total capacity of arcs leaving source_side (not a flow computation)."""
    side = frozenset(source_side)
    return sum(c for u, v, c in net.arcs if u in side and v not in side)
