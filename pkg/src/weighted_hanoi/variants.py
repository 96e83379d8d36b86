"""Restricted-move variants and the weights that reproduce them.

A variant forbids some peg-to-peg moves. Its movement digraph must be
strongly connected for the puzzle to stay solvable, which leaves five
digraphs on three pegs up to relabelling. A weighted instance "respects" a
variant when each forbidden arc (i, j) is so expensive that the cheapest
plan routes the largest disc around it::

    w[i, j] > w[i, k] + w[k, j] + max(0, 2 C[i, j] + C[j, i] - C[i, k] - C[k, j])
    C_n[i, j] == 2 C[i, j] + C[j, i] + w[i, k] + w[k, j]

with every unsubscripted ``C`` taken at n - 1 discs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import NamedTuple, Optional

from .dp_solver import CostTable, compute_cost_table, plan_summary
from .model import (
    FLOAT_TOL,
    INF,
    PAIRS,
    PEGS,
    Cost,
    HanoiError,
    WeightMatrix,
    as_peg,
    cost_eq,
    cost_lt,
)


class NotStronglyConnected(HanoiError):
    pass


class SynthesisFailed(HanoiError):
    pass


def _strongly_connected(arcs: frozenset) -> bool:
    def reach(adj):
        seen, stack = {1}, [1]
        while stack:
            u = stack.pop()
            for v in adj.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == 3

    fwd, back = {}, {}
    for a, b in arcs:
        fwd.setdefault(a, []).append(b)
        back.setdefault(b, []).append(a)
    return reach(fwd) and reach(back)


@dataclass(frozen=True)
class VariantDigraph:
    arcs: frozenset
    name: str = "custom"
    is_strongly_connected: bool = field(init=False)

    def __post_init__(self):
        arcs = frozenset((int(as_peg(a)), int(as_peg(b))) for a, b in self.arcs)
        if any(a == b for a, b in arcs):
            raise HanoiError("loops are not moves")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "is_strongly_connected", _strongly_connected(arcs))

    @property
    def forbidden(self) -> tuple:
        return tuple(p for p in PAIRS if p not in self.arcs)

    def permuted(self, perm: dict) -> "VariantDigraph":
        """Relabel peg p as ``perm[p]``; the result is tagged custom."""
        return VariantDigraph(frozenset((perm[a], perm[b]) for a, b in self.arcs))

    def literal(self) -> str:
        return ",".join(f"{a}>{b}" for a, b in sorted(self.arcs))


K3 = VariantDigraph(frozenset(PAIRS), "K3")
K3_MINUS = VariantDigraph(frozenset(PAIRS) - {(1, 3)}, "K3_minus")
L3 = VariantDigraph(frozenset({(1, 2), (2, 1), (2, 3), (3, 2)}), "L3")
C3_PLUS = VariantDigraph(frozenset({(1, 2), (2, 3), (3, 1), (2, 1)}), "C3_plus")
C3 = VariantDigraph(frozenset({(1, 2), (2, 3), (3, 1)}), "C3")

CANONICAL = {"K3": K3, "K3-": K3_MINUS, "L3": L3, "C3+": C3_PLUS, "C3": C3}


def five_digraphs() -> list:
    return [K3, K3_MINUS, L3, C3_PLUS, C3]


def parse_digraph(text: str) -> VariantDigraph:
    """Parse ``"1>2,2>1"`` or one of the names K3, K3-, L3, C3+, C3."""
    text = text.strip()
    if text in CANONICAL:
        return CANONICAL[text]
    arcs = set()
    for part in filter(None, (p.strip() for p in text.split(","))):
        try:
            a, b = part.split(">")
            arcs.add((as_peg(a), as_peg(b)))
        except ValueError:
            raise HanoiError(f"bad arc {part!r}; expected e.g. 1>2") from None
    if not arcs:
        raise HanoiError("empty digraph")
    return VariantDigraph(frozenset(arcs))


def all_peg_permutations() -> list:
    return [dict(zip(PEGS, (int(p) for p in perm))) for perm in permutations(PEGS)]


# --- the forbidden-arc condition ------------------------------------------

class ArcCondition(NamedTuple):
    arc: tuple
    inequality_holds: bool
    equality_holds: bool
    threshold: Cost


def _excess(pos: Cost, neg: Cost) -> Cost:
    """max(0, pos - neg) without forming inf - inf."""
    if neg == INF:
        # the direct branch is already infinite whatever w[i, j] is
        return 0
    return max(0, pos - neg)


def forbidden_arc_condition(
    weights: WeightMatrix, n: int, i, j, table: Optional[CostTable] = None
) -> ArcCondition:
    """Evaluate the two conditions under which no cheapest n-disc plan moves
    a disc from ``i`` to ``j``; ``table`` must cover at least n discs."""
    i, j = int(as_peg(i)), int(as_peg(j))
    if i == j:
        raise HanoiError("arc endpoints must differ")
    if n < 1:
        raise HanoiError("the condition needs at least one disc")
    if table is None or table.n < n:
        table = compute_cost_table(weights, n)
    k = 6 - i - j
    c = table.costs(n - 1)
    w = weights
    excess = _excess(2 * c[i, j] + c[j, i], c[i, k] + c[k, j])
    threshold = w[i, k] + w[k, j] + excess
    exact = w.exact
    inequality = threshold != INF and cost_lt(threshold, w[i, j], exact)
    via = table.entry(n, i, j).branches.right
    equality = cost_eq(table.cost(n, i, j), via, exact)
    return ArcCondition((i, j), inequality, equality, threshold)


@dataclass(frozen=True)
class RestrictionReport:
    digraph: VariantDigraph
    n: int
    per_forbidden_arc: tuple
    compatible: bool
    #: the same conditions checked at every level 1..n
    strict_compatible: bool
    #: levels at which some forbidden-arc condition fails
    failing_levels: tuple
    #: whether the generated source -> destination plan avoids forbidden arcs
    solution_respects: bool
    solution_arcs: frozenset
    solution_moves: int
    source: int = 1
    destination: int = 3


def respects_variant(
    weights: WeightMatrix, n: int, digraph: VariantDigraph, source=1, destination=3
) -> RestrictionReport:
    """Check the forbidden-arc conditions for every arc missing from
    ``digraph`` and cross-check against the generated plan."""
    if not digraph.is_strongly_connected:
        raise NotStronglyConnected(f"{digraph.literal()} is not strongly connected")
    if n < 0:
        raise HanoiError("disc count must be nonnegative")
    table = compute_cost_table(weights, n)
    forbidden = digraph.forbidden
    conditions = tuple(
        forbidden_arc_condition(weights, n, i, j, table) for i, j in forbidden
    ) if n >= 1 else ()
    compatible = all(c.inequality_holds and c.equality_holds for c in conditions)
    failing = []
    for m in range(1, n + 1):
        level = [forbidden_arc_condition(weights, m, i, j, table) for i, j in forbidden]
        if not all(c.inequality_holds and c.equality_holds for c in level):
            failing.append(m)
    moves, arcs = plan_summary(table, n, source, destination)
    return RestrictionReport(
        digraph=digraph,
        n=n,
        per_forbidden_arc=conditions,
        compatible=compatible,
        strict_compatible=not failing,
        failing_levels=tuple(failing),
        solution_respects=arcs <= digraph.arcs,
        solution_arcs=arcs,
        solution_moves=moves,
        source=int(source),
        destination=int(destination),
    )


def _displayed(weights: WeightMatrix, n: int, i: int, j: int, k: int, table) -> bool:
    # written out term by term, independent of forbidden_arc_condition
    c = table.costs(n - 1)
    w = weights
    rhs = w[i, k] + w[k, j] + max(0, 2 * c[i, j] + c[j, i] - c[i, k] - c[k, j])
    return cost_lt(rhs, w[i, j], w.exact)


def linear_condition(weights: WeightMatrix, n: int) -> bool:
    """Inequalities under which the linear variant (no 1 <-> 3 moves) is optimal."""
    if n < 1:
        raise HanoiError("the condition needs at least one disc")
    table = compute_cost_table(weights, n)
    return _displayed(weights, n, 1, 3, 2, table) and _displayed(weights, n, 3, 1, 2, table)


def cyclic_condition(weights: WeightMatrix, n: int) -> bool:
    """Inequalities under which the cycle 1 -> 2 -> 3 -> 1 is optimal."""
    if n < 1:
        raise HanoiError("the condition needs at least one disc")
    table = compute_cost_table(weights, n)
    return (
        _displayed(weights, n, 1, 3, 2, table)
        and _displayed(weights, n, 3, 2, 1, table)
        and _displayed(weights, n, 2, 1, 3, table)
    )


# --- weight synthesis -----------------------------------------------------

SEARCH_STEPS = 64


def _certified(weights: WeightMatrix, n: int, digraph: VariantDigraph, source, destination) -> bool:
    report = respects_variant(weights, n, digraph, source, destination)
    return report.compatible and report.solution_respects


def synthesize_weights(
    digraph: VariantDigraph, base: WeightMatrix, n: int, source=1, destination=3
) -> WeightMatrix:
    """Finite weights for the forbidden arcs that make ``digraph`` optimal.

    Allowed arcs keep their ``base`` values. Each forbidden arc starts at
    ``1 + 3**n * max_allowed_weight``, which no plan along allowed arcs can
    reach, and is then lowered by bisection, one arc at a time, to the
    smallest value at which the forbidden-arc conditions still hold and the
    generated ``source -> destination`` plan still avoids every forbidden
    arc. The result is deterministic, so re-synthesizing from it is a no-op.
    """
    if not digraph.is_strongly_connected:
        raise NotStronglyConnected(f"{digraph.literal()} is not strongly connected")
    forbidden = digraph.forbidden
    if not forbidden or n < 1:
        return base
    allowed_values = [base[a] for a in sorted(digraph.arcs)]
    if any(v == INF for v in allowed_values):
        raise HanoiError("allowed arcs need finite base weights")
    top = max(allowed_values)
    if base.exact:
        bound = 1 + 3**n * top
    else:
        bound = 1.0 + 3**n * float(top)
    weights = base.replace({arc: bound for arc in forbidden})
    if not _certified(weights, n, digraph, source, destination):
        raise SynthesisFailed("the provisional bound is not compatible")

    for arc in forbidden:
        lo, hi = weights.zero, bound
        if _certified(weights.replace({arc: lo}), n, digraph, source, destination):
            weights = weights.replace({arc: lo})
            continue
        for _ in range(SEARCH_STEPS):
            mid = (lo + hi) / 2
            if _certified(weights.replace({arc: mid}), n, digraph, source, destination):
                hi = mid
            else:
                lo = mid
            if not base.exact and hi - lo <= FLOAT_TOL:
                break
        weights = weights.replace({arc: hi})

    if not _certified(weights, n, digraph, source, destination):
        raise SynthesisFailed("lowering the forbidden arcs broke compatibility")
    return weights
