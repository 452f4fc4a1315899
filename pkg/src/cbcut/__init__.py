"""Cardinality-based hypergraph minimum s-t cut toolkit.

Evaluate the cut objective exactly, decide membership in the tractable
(submodular) weight region, solve submodular instances in polynomial time by
gadget reduction to directed min-cut, solve arbitrary instances exhaustively
at small scale, and build + verify the max-cut and 3SAT hardness-reduction
constructions for everything outside the region.
"""

from .model import (
    Cut,
    Hypergraph,
    INF,
    SplitProfile,
    SplittingWeights,
    cut_cost,
    is_inf,
    normalize_weights,
    split_profile,
    validate_hypergraph,
)
from .region import NotSubmodularError, Submodular, Violated, classify, gadget_decompose
from .flow import FlowNetwork, max_flow_min_cut, scale_to_integer_capacities
from .solvers import (
    CutSolution,
    DEFAULT_ENUM_LIMIT,
    GadgetPlan,
    GadgetTerm,
    TooLargeError,
    build_gadget_network,
    gadget_cost_oracle,
    solve_auto,
    solve_brute,
    solve_contracted,
    solve_submodular,
)
from .formats import InstanceBundle, ParseError, parse_instance
from .reductions import (
    AffineCost,
    CnfFormula,
    Graph,
    ReductionArtifact,
    ThresholdCost,
    VerificationReport,
    extract_solution,
    formula_satisfied,
    oracle_maxcut,
    oracle_sat3,
    reduce_maxcut_concavity,
    reduce_maxcut_monotone,
    reduce_maxcut_w2,
    reduce_sat3,
    verify_reduction,
)

__version__ = "0.1.0"
