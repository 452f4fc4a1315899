"""Hypergraphs, splitting weights, and the cardinality-based cut objective.

A hyperedge crossed by an s-t cut is penalized according to the size of its
minority side only: a weight vector (w_0, w_1, ..., w_q) charges w_i for every
cut edge with exactly i nodes on its smaller side.  All finite arithmetic is
exact (fractions.Fraction); the single non-finite value INF marks forbidden
splits and absorbs addition.

All types are immutable by convention after construction; every operation is
a pure function of its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Union

#: Extended-rational weight: an exact Fraction, or +infinity.
Weight = Union[Fraction, float]

INF: float = math.inf


def is_inf(x: Weight) -> bool:
    return isinstance(x, float) and math.isinf(x)


def as_weight(x) -> Weight:
    """Coerce ints, strings ("5/2", "3", "inf") and Fractions to a Weight."""
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "+inf", "infinity"):
            return INF
        return Fraction(x)
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return INF
        raise ValueError(f"finite floats are not exact weights: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a weight")


def weight_str(x: Weight) -> str:
    """Canonical text form: lowest-terms rational ("3", "5/2") or "inf"."""
    if is_inf(x):
        return "inf"
    return str(x)


@dataclass
class Hypergraph:
    """Undirected hypergraph with designated terminals.

    Nodes are the integers 1..n.  Each edge is a tuple of node ids, expected
    to be strictly increasing with size >= 2 (use validate_hypergraph to
    check); s is the source terminal, t the sink.
    """

    n: int
    edges: tuple
    s: int
    t: int

    def __post_init__(self):
        self.edges = tuple(tuple(e) for e in self.edges)

    @property
    def r_max(self) -> int:
        """Largest edge size; 0 when there are no edges."""
        return max((len(e) for e in self.edges), default=0)

    @cached_property
    def edge_masks(self) -> list:
        """Bitmask per edge, bit (v-1) set for each member v."""
        return [_mask_of(e) for e in self.edges]


def _mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for v in nodes:
        m |= 1 << (v - 1)
    return m


@dataclass(frozen=True)
class SplittingWeights:
    """Weight vector w_0..w_q indexed by minority-side size.

    w_0 must be 0, all entries nonnegative, q >= 1.  Entries may be INF
    (forbidden splits).
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple(as_weight(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise ValueError("need at least w_0 and w_1")
        if entries[0] != 0:
            raise ValueError("w_0 must be 0")
        for i, x in enumerate(entries):
            if not is_inf(x) and x < 0:
                raise ValueError(f"w_{i} is negative")

    @property
    def q(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, i: int) -> Weight:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class Cut:
    """An s-t cut, stored as its source-side node set."""

    source_side: frozenset

    def __post_init__(self):
        object.__setattr__(self, "source_side", frozenset(self.source_side))

    def mask(self) -> int:
        return _mask_of(self.source_side)


@dataclass(frozen=True)
class SplitProfile:
    """counts[i] = number of edges whose minority side has exactly i nodes."""

    counts: tuple

    def total(self) -> int:
        return sum(self.counts)


def validate_hypergraph(h: Hypergraph) -> list:
    """Return a list of invariant violations; empty means the hypergraph is valid.

    Every violation is reported with the offending edge index or node id.
    """
    problems = []
    if h.n < 1:
        problems.append(f"node count {h.n} < 1")
    for name, v in (("s", h.s), ("t", h.t)):
        if not (1 <= v <= h.n):
            problems.append(f"terminal {name}={v} out of range [1, {h.n}]")
    if h.s == h.t:
        problems.append("s and t must differ")
    for idx, e in enumerate(h.edges):
        if len(e) < 2:
            problems.append(f"edge {idx}: size {len(e)} < 2")
        prev = None
        for v in e:
            if not (1 <= v <= h.n):
                problems.append(f"edge {idx}: node {v} out of range [1, {h.n}]")
            if prev is not None and v == prev:
                problems.append(f"edge {idx}: duplicate node {v}")
            elif prev is not None and v < prev:
                problems.append(f"edge {idx}: nodes not strictly increasing")
            prev = v
    return problems


def _check_cut(h: Hypergraph, cut: Cut) -> None:
    if h.s not in cut.source_side or h.t in cut.source_side:
        raise ValueError("invalid terminal placement")


def split_profile(h: Hypergraph, cut: Cut) -> SplitProfile:
    """Count edges by minority-side size under the given cut."""
    _check_cut(h, cut)
    counts = [0] * (h.r_max // 2 + 1)
    smask = cut.mask()
    for emask, e in zip(h.edge_masks, h.edges):
        a = (emask & smask).bit_count()
        counts[min(a, len(e) - a)] += 1
    return SplitProfile(tuple(counts))


def cut_cost(h: Hypergraph, w: SplittingWeights, cut: Cut) -> Weight:
    """Total cost sum_i w_i * |C_i|; INF iff a positive count meets an INF weight."""
    if w.q < h.r_max // 2:
        raise ValueError(
            f"weights shorter than floor(r_max/2): q={w.q} < {h.r_max // 2}"
        )
    profile = split_profile(h, cut)
    total = Fraction(0)
    for i, count in enumerate(profile.counts):
        if count == 0:
            continue
        if is_inf(w[i]):
            return INF
        total += w[i] * count
    return total


def normalize_weights(w: SplittingWeights) -> Optional[SplittingWeights]:
    """Rescale so w_1 = 1; None signals the degenerate w_1 = 0 case.

    With w_1 = 0 the problem is trivial: S = {s} is a zero-cost cut, so no
    normalized vector exists and None is returned.
    """
    w1 = w[1]
    if is_inf(w1):
        raise ValueError("non-normalizable weights: w_1 is infinite")
    if w1 == 0:
        return None
    if w1 == 1:
        return w
    scaled = tuple(x if is_inf(x) else x / w1 for x in w.entries)
    return SplittingWeights(scaled)
