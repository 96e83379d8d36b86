"""Weighted Tower of Hanoi: optimal plans, exhaustive verification and
restricted-move variants."""
from .dp_solver import (
    BranchCosts,
    CostTable,
    InfiniteCost,
    NotSymmetric,
    RecursionStats,
    compute_cost_table,
    count_subproblems,
    generate_solution,
    iter_moves,
    min_cost,
    move_count_bounds,
    symmetric_cost,
    uniform_cost,
)
from .model import (
    INF,
    HanoiError,
    IllegalMove,
    Instance,
    Move,
    Peg,
    Solution,
    WeightMatrix,
    WrongFinalState,
    intermediate_peg,
    replay,
    weights_from_json,
)
from .oracle import (
    CapExceeded,
    LexCost,
    Unreachable,
    bfs_min_moves,
    dijkstra_lex,
    dijkstra_min_cost,
    legal_moves,
)
from .variants import (
    C3,
    C3_PLUS,
    K3,
    K3_MINUS,
    L3,
    NotStronglyConnected,
    SynthesisFailed,
    VariantDigraph,
    cyclic_condition,
    five_digraphs,
    forbidden_arc_condition,
    linear_condition,
    respects_variant,
    synthesize_weights,
)

__version__ = "0.1.0"
