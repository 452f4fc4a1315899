"""Seeded instance generators built on a fixed, portable PRNG.

SplitMix64 is pinned here (rather than the stdlib Mersenne Twister) so that
fixtures regenerate byte-identically on any platform and Python version;
every generator takes an explicit seed.
"""

from __future__ import annotations

from fractions import Fraction

from .model import Hypergraph, SplittingWeights
from .reductions import CnfFormula, Graph

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix generator; full period, two multiplies per draw."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), bias-free via rejection."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        cutoff = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < cutoff:
                return x % n

    def sample(self, items, count: int) -> list:
        """count distinct items by partial Fisher-Yates; order as drawn."""
        pool = list(items)
        if count > len(pool):
            raise ValueError(f"cannot sample {count} from {len(pool)} items")
        for idx in range(count):
            j = idx + self.below(len(pool) - idx)
            pool[idx], pool[j] = pool[j], pool[idx]
        return pool[:count]


def random_graph(seed: int, n: int, m: int) -> Graph:
    """Uniform simple graph with exactly m edges on nodes 1..n."""
    rng = SplitMix64(seed)
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    if m > len(pairs):
        raise ValueError(f"{m} edges exceed the {len(pairs)} possible on {n} nodes")
    chosen = sorted(rng.sample(pairs, m))
    return Graph(n=n, edges=tuple(chosen))


def random_cnf(seed: int, num_vars: int, num_clauses: int) -> CnfFormula:
    """3-CNF with distinct variables per clause and random polarities."""
    if num_vars < 3 and num_clauses > 0:
        raise ValueError("need at least 3 variables for 3-literal clauses")
    rng = SplitMix64(seed)
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clause = tuple(v if rng.below(2) else -v for v in vs)
        clauses.append(clause)
    return CnfFormula(num_vars=num_vars, clauses=tuple(clauses))


def random_hypergraph(seed: int, n: int, m: int, r_max: int) -> Hypergraph:
    """Hypergraph with m random edges of sizes in [2, min(r_max, n)]; s=1, t=n."""
    if n < 2:
        raise ValueError("need at least 2 nodes for terminals")
    rng = SplitMix64(seed)
    top = min(r_max, n)
    edges = []
    for _ in range(m):
        size = 2 + rng.below(top - 1)
        edges.append(tuple(sorted(rng.sample(range(1, n + 1), size))))
    return Hypergraph(n=n, edges=tuple(edges), s=1, t=n)


def random_submodular_weights(seed: int, q: int) -> SplittingWeights:
    """Weights w_i = sum_j c_j * min(i, j) from random nonnegative c_j.

    Any such vector (with some c_j > 0) lies inside the submodular region
    after normalization, so these are valid inputs for the gadget solver.
    """
    rng = SplitMix64(seed)
    while True:
        coeffs = [Fraction(rng.below(9), 4) for _ in range(q)]  # grid 0, 1/4, ..., 2
        if any(c > 0 for c in coeffs):
            break
    entries = tuple(
        sum((c * min(i, j) for j, c in enumerate(coeffs, start=1)), Fraction(0))
        for i in range(q + 1)
    )
    return SplittingWeights(entries)
