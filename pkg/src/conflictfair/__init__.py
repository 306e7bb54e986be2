"""Fair division of indivisible goods and chores under graph conflict
constraints: maximal EF1 solvers, a brute-force oracle, hardness-instance
generators, and maximal equitable tree coloring."""

from .core import (
    CHORES,
    GOODS,
    Additive,
    Allocation,
    Chain,
    ConflictGraph,
    Instance,
    Negated,
    Restriction,
    Sum,
    Table,
    Uniform,
    ValidationReport,
    ValuationModel,
    complete_to_maximal_is,
    evaluate,
    is_ef1,
    is_independent_set,
    is_maximal,
    is_ordered_adjacent,
    validate_allocation,
    value_minus_one,
)
from .chain import ChainOutcome, build_chain, chain_ef1, cut_and_choose
from .swap import SwapIteration, SwapTrace, iteration_bound_additive, swap_ef1
from .graph_classes import (
    IntervalChains,
    IntervalSet,
    SchedulingSolution,
    bipartite_ef1,
    bipartition,
    interval_chains,
    interval_ef1,
    interval_scheduling_greedy,
    is_bipartite,
    round_robin_small,
)
from .oracle import (
    BudgetExceededError,
    EnumerationBudget,
    ExistenceResult,
    compute_gamma,
    count_maximal_allocations,
    enumerate_maximal_allocations,
    exists_maximal_ef1,
)
from .hardness import (
    GoodMap,
    ISInstance,
    ReductionSpec,
    build_reduction,
    gen_counterexample,
    independent_sets,
    max_independent_set_size,
    structured_maximal_allocations,
    yes_certificate,
)
from .treecolor import PartialColoring, RootedTree, coloring_violations, equitable_tree_coloring

__version__ = "0.1.0"

__all__ = [
    "CHORES",
    "GOODS",
    "Additive",
    "Allocation",
    "BudgetExceededError",
    "Chain",
    "ChainOutcome",
    "ConflictGraph",
    "EnumerationBudget",
    "ExistenceResult",
    "GoodMap",
    "ISInstance",
    "Instance",
    "IntervalChains",
    "IntervalSet",
    "Negated",
    "PartialColoring",
    "ReductionSpec",
    "Restriction",
    "RootedTree",
    "SchedulingSolution",
    "Sum",
    "SwapIteration",
    "SwapTrace",
    "Table",
    "Uniform",
    "ValidationReport",
    "ValuationModel",
    "bipartite_ef1",
    "bipartition",
    "build_chain",
    "build_reduction",
    "chain_ef1",
    "coloring_violations",
    "complete_to_maximal_is",
    "compute_gamma",
    "count_maximal_allocations",
    "cut_and_choose",
    "enumerate_maximal_allocations",
    "equitable_tree_coloring",
    "evaluate",
    "exists_maximal_ef1",
    "gen_counterexample",
    "independent_sets",
    "interval_chains",
    "interval_ef1",
    "interval_scheduling_greedy",
    "is_bipartite",
    "is_ef1",
    "is_independent_set",
    "is_maximal",
    "is_ordered_adjacent",
    "iteration_bound_additive",
    "max_independent_set_size",
    "round_robin_small",
    "structured_maximal_allocations",
    "swap_ef1",
    "validate_allocation",
    "value_minus_one",
    "yes_certificate",
]
