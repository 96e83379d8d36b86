"""Minimum-cost transfers by dynamic programming over ordered peg pairs.

For every disc count ``m`` and ordered pair ``(i, j)`` with third peg ``k``
there are two ways to carry the largest of ``m`` discs from i to j:

* left, direct: park the m-1 smaller discs on k, move the big disc i -> j,
  bring the smaller discs k -> j;
* right, via k: smaller discs i -> j, big disc i -> k, smaller discs
  j -> i, big disc k -> j, smaller discs i -> j.

The table keeps both branch costs for every entry. Move generation replays
the same choices, preferring the direct branch on ties, which keeps the
number of moves minimal among the cheapest plans.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple, Optional

from .model import (
    INF,
    PAIRS,
    Cost,
    HanoiError,
    Instance,
    Move,
    Solution,
    WeightMatrix,
    cost_eq,
    cost_le,
    cost_to_json,
    format_cost,
    intermediate_peg,
    parse_cost,
)


class InfiniteCost(HanoiError):
    pass


class NotSymmetric(HanoiError):
    pass


class BranchCosts(NamedTuple):
    left: Cost
    right: Cost


class CostEntry(NamedTuple):
    cost: Cost
    branches: Optional[BranchCosts] = None
    chose_left: Optional[bool] = None


def _third(i: int, j: int) -> int:
    return 6 - i - j


def branch_costs(weights: WeightMatrix, prev: dict, i: int, j: int) -> BranchCosts:
    """Both branch costs for pair (i, j) given the previous table row."""
    k = _third(i, j)
    w = weights
    left = prev[i, k] + prev[k, j] + w[i, j]
    right = 2 * prev[i, j] + prev[j, i] + w[i, k] + w[k, j]
    return BranchCosts(left, right)


@dataclass(frozen=True)
class CostTable:
    """Optimal costs ``C[m][(i, j)]`` for m = 0..n and the six ordered pairs."""

    weights: WeightMatrix
    n: int
    rows: tuple  # rows[m] is a dict {(i, j): CostEntry}

    def entry(self, m: int, i, j) -> CostEntry:
        return self.rows[m][int(i), int(j)]

    def cost(self, m: int, i, j) -> Cost:
        if int(i) == int(j):
            return self.weights.zero
        return self.rows[m][int(i), int(j)].cost

    def costs(self, m: int) -> dict:
        return {p: e.cost for p, e in self.rows[m].items()}

    def to_dict(self) -> dict:
        """Table-1 style layout: one row per m, one cell per ordered pair."""
        out_rows = []
        for m, row in enumerate(self.rows):
            cells = {}
            for i, j in PAIRS:
                e = row[i, j]
                cells[f"{i}->{j}"] = {
                    "L": None if e.branches is None else cost_to_json(e.branches.left),
                    "R": None if e.branches is None else cost_to_json(e.branches.right),
                    "cost": cost_to_json(e.cost),
                    "chose_left": e.chose_left,
                }
            out_rows.append({"m": m, "cells": cells})
        return {
            "n": self.n,
            "exact": self.weights.exact,
            "pairs": [f"{i}->{j}" for i, j in PAIRS],
            "weights": self.weights.to_json()["weights"],
            "rows": out_rows,
        }

    def format(self) -> str:
        """Human-readable table with the chosen branch starred."""
        header = ["m"]
        for i, j in PAIRS:
            header += [f"L {i}->{j}", f"R {i}->{j}"]
        lines = [header]
        for m, row in enumerate(self.rows[1:], start=1):
            cells = [str(m)]
            for pair in PAIRS:
                e = row[pair]
                left, right = (format_cost(v) for v in e.branches)
                optimal_left = cost_eq(e.branches.left, e.cost, self.weights.exact)
                optimal_right = cost_eq(e.branches.right, e.cost, self.weights.exact)
                cells += [left + ("*" if optimal_left else ""), right + ("*" if optimal_right else "")]
            lines.append(cells)
        widths = [max(len(r[c]) for r in lines) for c in range(len(header))]
        return "\n".join(
            "  ".join(cell.rjust(width) for cell, width in zip(r, widths)) for r in lines
        )


def compute_cost_table(weights: WeightMatrix, n: int) -> CostTable:
    """Fill the cost table bottom-up for all six ordered pairs, m = 0..n."""
    if n < 0:
        raise HanoiError("disc count must be nonnegative")
    exact = weights.exact
    zero = weights.zero
    rows = [{p: CostEntry(zero) for p in PAIRS}]
    prev = {p: zero for p in PAIRS}
    for _ in range(n):
        row = {}
        for i, j in PAIRS:
            b = branch_costs(weights, prev, i, j)
            chose_left = cost_le(b.left, b.right, exact)
            row[i, j] = CostEntry(b.left if chose_left else b.right, b, chose_left)
        rows.append(row)
        prev = {p: e.cost for p, e in row.items()}
    return CostTable(weights, n, tuple(rows))


def table_from_dict(doc: dict) -> CostTable:
    """Inverse of :meth:`CostTable.to_dict`; raises on malformed input."""
    weights = WeightMatrix(doc["weights"])
    rows = []
    for m, r in enumerate(doc["rows"]):
        if r["m"] != m:
            raise HanoiError("table rows out of order")
        row = {}
        for i, j in PAIRS:
            cell = r["cells"][f"{i}->{j}"]
            cost = _json_cost(cell["cost"], weights.exact)
            if cell["L"] is None:
                row[i, j] = CostEntry(cost)
            else:
                b = BranchCosts(_json_cost(cell["L"], weights.exact), _json_cost(cell["R"], weights.exact))
                row[i, j] = CostEntry(cost, b, cell["chose_left"])
        rows.append(row)
    return CostTable(weights, len(rows) - 1, tuple(rows))


def _json_cost(value, exact):
    v = parse_cost(value)
    return v if exact or v == INF else float(v)


def check_table(table: CostTable) -> list:
    """Re-derive every entry from the row below it; return the mismatches."""
    w = table.weights
    exact = w.exact
    problems = []
    for (i, j), e in table.rows[0].items():
        if not cost_eq(e.cost, w.zero, exact):
            problems.append((0, (i, j), "nonzero base cost"))
    for m in range(1, table.n + 1):
        prev = table.costs(m - 1)
        for pair, e in table.rows[m].items():
            b = branch_costs(w, prev, *pair)
            ok = (
                e.branches is not None
                and cost_eq(b.left, e.branches.left, exact)
                and cost_eq(b.right, e.branches.right, exact)
                and cost_eq(e.cost, min(b.left, b.right), exact)
                and e.chose_left == cost_le(b.left, b.right, exact)
            )
            if not ok:
                problems.append((m, pair, "entry disagrees with recursion"))
    return problems


def min_cost(instance: Instance) -> Cost:
    """Minimum total cost of moving the whole tower from source to destination."""
    if instance.n == 0 or instance.source == instance.destination:
        return instance.weights.zero
    table = compute_cost_table(instance.weights, instance.n)
    return table.cost(instance.n, instance.source, instance.destination)


def iter_moves(instance: Instance, table: Optional[CostTable] = None) -> Iterator[Move]:
    """Yield the optimal move sequence lazily.

    Move counts grow between 2**n - 1 and 3**n - 1, so callers that only
    need to stream moves should prefer this over :func:`generate_solution`.
    """
    n = instance.n
    if n == 0 or instance.source == instance.destination:
        return
    if table is None:
        table = compute_cost_table(instance.weights, n)
    if table.cost(n, instance.source, instance.destination) == INF:
        raise InfiniteCost("no finite-cost transfer exists for these weights")

    def wthd(m, i, j):
        if m == 0:
            return
        k = _third(i, j)
        if table.rows[m][i, j].chose_left:
            yield from wthd(m - 1, i, k)
            yield Move(m, i, j)
            yield from wthd(m - 1, k, j)
        else:
            yield from wthd(m - 1, i, j)
            yield Move(m, i, k)
            yield from wthd(m - 1, j, i)
            yield Move(m, k, j)
            yield from wthd(m - 1, i, j)

    yield from wthd(n, int(instance.source), int(instance.destination))


def generate_solution(instance: Instance) -> Solution:
    table = compute_cost_table(instance.weights, instance.n)
    moves = tuple(iter_moves(instance, table))
    w = instance.weights
    total = w.zero
    for mv in moves:
        total = total + w[mv.src, mv.dst]
    return Solution(moves, total, len(moves))


def plan_summary(table: CostTable, m: int, i, j) -> tuple:
    """(move count, set of arcs) of the generated plan without emitting it.

    Runs in O(6 m) by memoizing per (level, pair); usable for any m the
    table covers, including those far too large to enumerate.
    """
    @lru_cache(maxsize=None)
    def walk(level, a, b):
        if level == 0 or a == b:
            return 0, frozenset()
        c = _third(a, b)
        if table.rows[level][a, b].chose_left:
            n1, s1 = walk(level - 1, a, c)
            n2, s2 = walk(level - 1, c, b)
            return n1 + n2 + 1, s1 | s2 | {(a, b)}
        n1, s1 = walk(level - 1, a, b)
        n2, s2 = walk(level - 1, b, a)
        return 2 * n1 + n2 + 2, s1 | s2 | {(a, c), (c, b)}

    # bottom-up warm-up keeps the recursion depth at one level per call
    for level in range(1, m):
        for a, b in PAIRS:
            walk(level, a, b)
    return walk(m, int(i), int(j))


# --- closed forms and special cases ---------------------------------------

def symmetric_cost(weights: WeightMatrix, n: int, i, j) -> Cost:
    """Cost for symmetric weights, where C[i, j] == C[j, i] collapses the
    via-k branch to ``3 C[m-1][i, j] + w[i, k] + w[k, j]``."""
    if not weights.is_symmetric():
        raise NotSymmetric("weights are not symmetric")
    i, j = int(i), int(j)
    if n == 0 or i == j:
        return weights.zero
    exact = weights.exact
    # keyed by unordered pair
    prev = {frozenset(p): weights.zero for p in PAIRS}
    for _ in range(n):
        cur = {}
        for a, b in ((1, 2), (1, 3), (2, 3)):
            c = _third(a, b)
            left = prev[frozenset((a, c))] + prev[frozenset((c, b))] + weights[a, b]
            right = 3 * prev[frozenset((a, b))] + weights[a, c] + weights[c, b]
            cur[frozenset((a, b))] = left if cost_le(left, right, exact) else right
        prev = cur
    return prev[frozenset((i, j))]


def uniform_cost(n: int, x) -> Cost:
    """Cost when every move costs ``x``: the classic ``2**n - 1`` moves."""
    if n < 0:
        raise HanoiError("disc count must be nonnegative")
    return (2**n - 1) * parse_cost(x)


def move_count_bounds(n: int) -> tuple:
    return 2**n - 1, 3**n - 1


# --- recursion instrumentation --------------------------------------------

NAIVE_CALL_CAP = 12


@dataclass(frozen=True)
class RecursionStats:
    n: int
    distinct_subproblems: int
    naive_calls: int
    paper_vn: int
    naive_calls_extrapolated: bool = False


def _reachable_subproblems(n: int, i: int = 1, j: int = 3) -> set:
    seen = set()
    stack = [(n, i, j)]
    while stack:
        m, a, b = stack.pop()
        if m <= 1:
            continue
        c = _third(a, b)
        for child in ((m - 1, a, c), (m - 1, c, b), (m - 1, a, b), (m - 1, b, a)):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return seen


def _naive_call_count(n: int) -> int:
    calls = 0

    def cost(m, a, b):
        nonlocal calls
        calls += 1
        if m == 1:
            return
        c = _third(a, b)
        cost(m - 1, a, c)
        cost(m - 1, c, b)
        cost(m - 1, a, b)
        cost(m - 1, b, a)

    if n >= 1:
        cost(n, 1, 3)
    return calls


def vn_formula(n: int) -> int:
    if n <= 2:
        return (0, 1, 4)[n]
    return 6 ** (n - 2) + 4


def count_subproblems(n: int) -> RecursionStats:
    """Instrumented subproblem counts next to the closed-form ``6**(n-2) + 4``.

    ``distinct_subproblems`` counts the distinct (level, pair) cost values
    with level >= 1 needed below the root; for n == 1 the root itself is the
    only one. ``naive_calls`` counts calls of the unmemoized recursion,
    measured up to ``NAIVE_CALL_CAP`` discs and continued with
    T(m) = 1 + 4 T(m-1) beyond it.
    """
    if n < 0:
        raise HanoiError("disc count must be nonnegative")
    if n == 0:
        distinct = 0
    elif n == 1:
        distinct = 1
    else:
        distinct = len(_reachable_subproblems(n))
    extrapolated = n > NAIVE_CALL_CAP
    if extrapolated:
        calls = _naive_call_count(NAIVE_CALL_CAP)
        for _ in range(NAIVE_CALL_CAP, n):
            calls = 1 + 4 * calls
    else:
        calls = _naive_call_count(n)
    return RecursionStats(n, distinct, calls, vn_formula(n), extrapolated)
