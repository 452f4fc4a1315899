import itertools
from fractions import Fraction

import pytest

from cbcut.model import INF, SplittingWeights, normalize_weights
from cbcut.region import NotSubmodularError, Submodular, Violated, classify, gadget_decompose


def W(*entries):
    return SplittingWeights(tuple(entries))


def test_classify_w2_interior():
    verdict = classify(W(0, 1, 2), 4)
    assert isinstance(verdict, Submodular)
    assert verdict.coefficients == ((1, Fraction(0)), (2, Fraction(1)))


def test_classify_w2_above_two():
    verdict = classify(W(0, 1, Fraction(5, 2)), 4)
    assert verdict == Violated(inequality=1, index=2, lhs=Fraction(5, 2), rhs=Fraction(2))


def test_classify_concavity_boundary_vertex():
    # (w_2, w_3) = (2, 3): inequality (2) at j=2 holds with equality 1+3 = 2*2
    verdict = classify(W(0, 1, 2, 3), 6)
    assert isinstance(verdict, Submodular)


def test_classify_decreasing_sequence():
    verdict = classify(W(0, 1, Fraction(3, 2), 1), 6)
    assert verdict == Violated(inequality=3, index=3, lhs=Fraction(3, 2), rhs=Fraction(1))


def test_classify_concavity_violation_index():
    verdict = classify(W(0, 1, 1, 2, 2), 8)
    assert verdict == Violated(inequality=2, index=2, lhs=Fraction(3), rhs=Fraction(2))


def test_classify_scan_order_reports_w2_first():
    # violates (1) and (3); the w_2 bound is reported
    verdict = classify(W(0, 1, 3, 2), 6)
    assert verdict.inequality == 1


def test_classify_requires_normalization():
    with pytest.raises(ValueError, match="normalize"):
        classify(W(0, 2, 3), 4)


def test_classify_rejects_infinite_entries():
    with pytest.raises(ValueError, match="never submodular"):
        classify(W(0, 1, INF), 4)


def test_classify_requires_enough_entries():
    with pytest.raises(ValueError, match="shorter"):
        classify(W(0, 1), 4)


def test_small_edges_need_nothing():
    # r in {2, 3}: no conditions beyond normalization
    assert isinstance(classify(W(0, 1), 2), Submodular)
    assert isinstance(classify(W(0, 1), 3), Submodular)


def test_decompose_examples():
    assert gadget_decompose(W(0, 1, 2), 4) == [(2, Fraction(1))]
    assert gadget_decompose(W(0, 1, 1), 4) == [(1, Fraction(1))]
    assert gadget_decompose(W(0, 1, Fraction(3, 2)), 5) == [
        (1, Fraction(1, 2)),
        (2, Fraction(1, 2)),
    ]


def test_decompose_rejects_violated():
    with pytest.raises(NotSubmodularError):
        gadget_decompose(W(0, 1, 3), 4)


def _grid_values(limit=4):
    vals = set()
    for den in (1, 2, 3, 4):
        for num in range(0, limit * den + 1):
            vals.add(Fraction(num, den))
    return sorted(vals)


def _direct_region_check(entries):
    """Independent formulation: nondecreasing with nonincreasing increments."""
    diffs = [entries[i + 1] - entries[i] for i in range(len(entries) - 1)]
    return all(d >= 0 for d in diffs) and all(
        diffs[i + 1] <= diffs[i] for i in range(len(diffs) - 1)
    )


def test_completeness_against_direct_conditions():
    # every grid vector with q <= 4: classify agrees with the direct check,
    # and Submodular verdicts carry nonnegative, exactly-reconstructing c_j
    grid = [v for v in _grid_values(3) if v <= 3]
    checked = 0
    for q in (2, 3, 4):
        r = 2 * q
        for tail in itertools.product(grid, repeat=q - 1):
            entries = (Fraction(0), Fraction(1)) + tail
            verdict = classify(SplittingWeights(entries), r)
            ok = _direct_region_check(entries)
            assert isinstance(verdict, Submodular) == ok, entries
            if ok:
                coeffs = dict(verdict.coefficients)
                assert all(c >= 0 for c in coeffs.values())
                for i in range(q + 1):
                    assert sum(c * min(i, j) for j, c in coeffs.items()) == entries[i]
            checked += 1
    assert checked > 100


def test_boundary_w2_equals_two_is_inside():
    assert isinstance(classify(W(0, 1, 2), 4), Submodular)
    assert isinstance(classify(W(0, 1, 2, 2), 6), Submodular)


def test_monotone_consistency_smaller_r():
    # inside at r implies inside at every r' <= r
    w = W(0, 1, Fraction(7, 4), 2, 2)
    for r in (8, 9):
        assert isinstance(classify(w, r), Submodular)
    for r_smaller in (2, 3, 4, 5, 6, 7):
        assert isinstance(classify(w, r_smaller), Submodular)


def test_unused_higher_entries_ignored():
    # entries above floor(r/2) take no part in the conditions
    w = W(0, 1, 2, Fraction(1, 2))  # would break (3) at j=3
    assert isinstance(classify(w, 4), Submodular)


def test_normalize_then_classify_pipeline():
    norm = normalize_weights(W(0, 2, 3))
    assert isinstance(classify(norm, 4), Submodular)
