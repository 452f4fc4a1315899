"""Shared independent oracles for cross-checking the library's fast paths."""

from fractions import Fraction

import pytest

from cbcut.model import INF, is_inf


def naive_split_profile(h, source_side):
    """Minority-size counts via plain set arithmetic (no bitmasks)."""
    src = set(source_side)
    counts = [0] * (h.r_max // 2 + 1)
    for e in h.edges:
        inside = sum(1 for v in e if v in src)
        counts[min(inside, len(e) - inside)] += 1
    return tuple(counts)


def naive_cut_cost(h, w, source_side):
    src = set(source_side)
    total = Fraction(0)
    for e in h.edges:
        inside = sum(1 for v in e if v in src)
        i = min(inside, len(e) - inside)
        if i and is_inf(w[i]):
            return INF
        if i:
            total += w[i]
    return total


def brute_min_cut_capacity(net):
    """Minimum s-t cut capacity by enumerating all node subsets."""
    others = [v for v in range(net.num_nodes) if v not in (net.source, net.sink)]
    best = None
    for bits in range(1 << len(others)):
        side = {net.source} | {others[i] for i in range(len(others)) if (bits >> i) & 1}
        cap = sum(c for u, v, c in net.arcs if u in side and v not in side)
        if best is None or cap < best:
            best = cap
    return best


@pytest.fixture
def k3():
    from cbcut.reductions import Graph

    return Graph(n=3, edges=((1, 2), (1, 3), (2, 3)))
