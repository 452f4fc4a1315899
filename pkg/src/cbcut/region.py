"""Membership test for the tractable (submodular) weight region.

For hyperedges of size r, a normalized weight vector (w_0=0, w_1=1, ...) is
inside the tractable region iff

  (1)  w_2 <= 2
  (2)  w_{j-1} + w_{j+1} <= 2 w_j     for j = 2, ..., floor(r/2)-1
  (3)  1 <= w_2 <= w_3 <= ... <= w_{floor(r/2)}

i.e. the sequence is nondecreasing and concave.  Inside the region the vector
decomposes as w_i = sum_j c_j * min(i, j) with c_j >= 0; each basis term
min(i, j) is realized by one directed gadget (see solvers), which is what
makes these instances solvable by max-flow.  The c_j are the negated second
differences, so the decomposition is closed form and unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .model import SplittingWeights, is_inf


class NotSubmodularError(ValueError):
    """Raised when an operation requires weights inside the submodular region."""


@dataclass(frozen=True)
class Submodular:
    """Verdict: inside the region, with the full coefficient list (j, c_j)."""

    coefficients: tuple  # ((j, c_j) for j = 1..floor(r/2)), zeros included


@dataclass(frozen=True)
class Violated:
    """Verdict: the first failing inequality in scan order (1), (3), (2)."""

    inequality: int  # 1, 2 or 3
    index: int       # the j at which it fails
    lhs: Fraction
    rhs: Fraction


RegionVerdict = Union[Submodular, Violated]


def _checked_prefix(w: SplittingWeights, r: int) -> list:
    if r < 2:
        raise ValueError(f"edge size {r} < 2")
    q = r // 2
    if w.q < q:
        raise ValueError(f"weights shorter than floor(r/2): q={w.q} < {q}")
    prefix = list(w.entries[: q + 1])
    for i, x in enumerate(prefix):
        if is_inf(x):
            raise ValueError(f"infinite weight is never submodular (w_{i})")
    if prefix[0] != 0 or prefix[1] != 1:
        raise ValueError("weights not normalized: call normalize_weights first")
    return prefix


def classify(w: SplittingWeights, r: int) -> RegionVerdict:
    """Decide region membership of normalized finite w for edge size r.

    Returns Violated for the first failing inequality, scanning (1), then (3)
    with j increasing, then (2) with j increasing; otherwise Submodular with
    coefficients c_j = 2 w_j - w_{j-1} - w_{j+1} for j < floor(r/2) and
    c_q = w_q - w_{q-1} at q = floor(r/2).
    """
    v = _checked_prefix(w, r)
    q = r // 2
    if q >= 2 and v[2] > 2:
        return Violated(inequality=1, index=2, lhs=v[2], rhs=Fraction(2))
    for j in range(2, q + 1):  # (3): w_{j-1} <= w_j, starting at 1 <= w_2
        if v[j - 1] > v[j]:
            return Violated(inequality=3, index=j, lhs=v[j - 1], rhs=v[j])
    for j in range(2, q):  # (2): concavity in the interior
        if v[j - 1] + v[j + 1] > 2 * v[j]:
            return Violated(inequality=2, index=j, lhs=v[j - 1] + v[j + 1], rhs=2 * v[j])
    coeffs = [(j, 2 * v[j] - v[j - 1] - v[j + 1]) for j in range(1, q)]
    coeffs.append((q, v[q] - v[q - 1]))
    return Submodular(coefficients=tuple(coeffs))


def gadget_decompose(w: SplittingWeights, r: int) -> list:
    """Nonzero coefficients (j, c_j) with sum_j c_j * min(i, j) = w_i for i <= floor(r/2).

    The reconstruction identity is re-verified before returning, so a wrong
    coefficient formula cannot slip through silently.
    """
    verdict = classify(w, r)
    if isinstance(verdict, Violated):
        raise NotSubmodularError(
            f"not submodular: inequality ({verdict.inequality}) fails at j={verdict.index}"
        )
    terms = [(j, c) for j, c in verdict.coefficients if c != 0]
    q = r // 2
    for i in range(q + 1):
        rebuilt = sum((c * min(i, j) for j, c in terms), Fraction(0))
        if rebuilt != w[i]:
            raise AssertionError(
                f"decomposition identity failed at i={i}: {rebuilt} != {w[i]}"
            )
    return terms
