from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cbcut.model import (
    Cut,
    Hypergraph,
    INF,
    SplittingWeights,
    cut_cost,
    is_inf,
    normalize_weights,
    split_profile,
    validate_hypergraph,
)

from conftest import naive_cut_cost, naive_split_profile


def test_validate_ok_minimal():
    h = Hypergraph(n=4, edges=((1, 2, 3, 4),), s=1, t=4)
    assert validate_hypergraph(h) == []


def test_validate_node_out_of_range():
    h = Hypergraph(n=3, edges=((1, 2, 5),), s=1, t=2)
    problems = validate_hypergraph(h)
    assert any("node 5 out of range" in p for p in problems)


def test_validate_duplicate_node():
    h = Hypergraph(n=4, edges=((1, 1, 2, 3),), s=1, t=4)
    problems = validate_hypergraph(h)
    assert any("duplicate node" in p and "edge 0" in p for p in problems)


def test_validate_reports_every_violation():
    h = Hypergraph(n=3, edges=((1, 2, 5), (2, 2)), s=1, t=1)
    problems = validate_hypergraph(h)
    assert len(problems) >= 3  # range, duplicate, s == t


@pytest.mark.parametrize(
    "source,expected",
    [
        ({1, 2}, (0, 0, 1)),  # 2-2 split
        ({1}, (0, 1, 0)),  # 3-1 split
    ],
)
def test_split_profile_single_edge(source, expected):
    h = Hypergraph(n=4, edges=((1, 2, 3, 4),), s=1, t=4)
    assert split_profile(h, Cut(frozenset(source))).counts == expected


def test_split_profile_uncut_edge():
    h = Hypergraph(n=5, edges=((2, 3, 4, 5),), s=1, t=5)
    assert split_profile(h, Cut(frozenset({1}))).counts == (1, 0, 0)


def test_split_profile_rejects_bad_terminals():
    h = Hypergraph(n=4, edges=((1, 2, 3, 4),), s=1, t=4)
    with pytest.raises(ValueError, match="terminal"):
        split_profile(h, Cut(frozenset({2})))
    with pytest.raises(ValueError, match="terminal"):
        split_profile(h, Cut(frozenset({1, 4})))


def test_cut_cost_examples():
    h = Hypergraph(n=4, edges=((1, 2, 3, 4),), s=1, t=4)
    assert cut_cost(h, SplittingWeights((0, 1, 2)), Cut(frozenset({1, 2}))) == 2

    h3 = Hypergraph(
        n=5, edges=((1, 2, 3, 5), (1, 2, 4, 5), (1, 3, 4, 5)), s=1, t=5
    )
    aon = SplittingWeights((0, 1, 1))
    assert cut_cost(h3, aon, Cut(frozenset({1}))) == 3  # all three edges cut

    winf = SplittingWeights((0, 1, INF))
    assert is_inf(cut_cost(h, winf, Cut(frozenset({1, 2}))))


def test_cut_cost_requires_long_enough_weights():
    h = Hypergraph(n=6, edges=((1, 2, 3, 4, 5, 6),), s=1, t=6)
    with pytest.raises(ValueError, match="shorter"):
        cut_cost(h, SplittingWeights((0, 1, 2)), Cut(frozenset({1})))


def test_normalize_scales():
    w = normalize_weights(SplittingWeights((0, 2, 5)))
    assert w.entries == (0, 1, Fraction(5, 2))


def test_normalize_degenerate():
    assert normalize_weights(SplittingWeights((0, 0, 3))) is None


def test_normalize_identity():
    w = SplittingWeights((0, 1, 2))
    assert normalize_weights(w).entries == (0, 1, 2)


def test_normalize_keeps_inf():
    w = normalize_weights(SplittingWeights((0, 2, INF)))
    assert w.entries[1] == 1 and is_inf(w.entries[2])


def test_normalize_infinite_w1_rejected():
    with pytest.raises(ValueError, match="non-normalizable"):
        normalize_weights(SplittingWeights((0, INF)))


def test_weights_invariants_enforced():
    with pytest.raises(ValueError, match="w_0"):
        SplittingWeights((1, 1))
    with pytest.raises(ValueError, match="negative"):
        SplittingWeights((0, -1))
    with pytest.raises(ValueError, match="at least"):
        SplittingWeights((0,))


# --- invariants ------------------------------------------------------------

edge_strategy = st.sets(st.integers(1, 9), min_size=2).map(lambda s: tuple(sorted(s)))
cuts_strategy = st.sets(st.integers(2, 8))


@given(
    edges=st.lists(edge_strategy, max_size=6),
    extra=cuts_strategy,
)
def test_profile_symmetry_and_conservation(edges, extra):
    h = Hypergraph(n=9, edges=tuple(edges), s=1, t=9)
    src = frozenset({1} | extra)
    counts = split_profile(h, Cut(src)).counts
    assert counts == naive_split_profile(h, src)
    assert sum(counts) == len(h.edges)
    # the complementary side assignment (terminals swapped) has the same profile
    swapped = Hypergraph(n=9, edges=tuple(edges), s=9, t=1)
    complement = frozenset(range(1, 10)) - src
    assert split_profile(swapped, Cut(complement)).counts == counts


@given(edges=st.lists(edge_strategy, max_size=6), extra=cuts_strategy)
def test_all_or_nothing_counts_cut_edges(edges, extra):
    h = Hypergraph(n=9, edges=tuple(edges), s=1, t=9)
    src = frozenset({1} | extra)
    aon = SplittingWeights((0,) + (1,) * max(1, h.r_max // 2))
    cost = cut_cost(h, aon, Cut(src))
    cut_edges = sum(
        1 for e in h.edges if 0 < len(set(e) & src) < len(e)
    )
    assert cost == cut_edges
    assert cost == naive_cut_cost(h, aon, src)


@given(edges=st.lists(edge_strategy, min_size=2, max_size=6), extra=cuts_strategy)
def test_cost_additive_over_edges(edges, extra):
    src = frozenset({1} | extra)
    w = SplittingWeights((0, 1, Fraction(3, 2), 2, 2))
    whole = Hypergraph(n=9, edges=tuple(edges), s=1, t=9)
    parts = [Hypergraph(n=9, edges=(e,), s=1, t=9) for e in edges]
    assert cut_cost(whole, w, Cut(src)) == sum(
        cut_cost(p, w, Cut(src)) for p in parts
    )


def test_empty_hypergraph_costs_zero():
    h = Hypergraph(n=3, edges=(), s=1, t=3)
    assert cut_cost(h, SplittingWeights((0, 1)), Cut(frozenset({1, 2}))) == 0
