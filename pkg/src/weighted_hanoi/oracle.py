"""Exhaustive shortest paths over the full 3**n configuration graph.

This is deliberately independent of the dynamic program: it knows nothing
about towers or peg pairs, only single-disc moves between configurations.
Configurations are integers in base 3, digit d (from the least significant)
holding ``peg - 1`` for disc ``d + 1``; the order of discs on a peg is
implied by their sizes.
"""
from __future__ import annotations

import heapq
import math
import random
from collections import deque
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .model import (
    FLOAT_TOL,
    INF,
    PAIRS,
    Cost,
    HanoiError,
    Move,
    WeightMatrix,
    as_peg,
)

DEFAULT_STATE_CAP = 12

ALL_ARCS = frozenset(PAIRS)


class CapExceeded(HanoiError):
    pass


class Unreachable(HanoiError):
    pass


class LexCost(NamedTuple):
    """Cost first, then number of moves; tuple order is the lexicographic order."""

    cost: Cost
    moves: int


# --- state codes -----------------------------------------------------------

def encode_state(pegs) -> int:
    """``pegs[d]`` is the peg of disc d + 1."""
    code = 0
    for d in reversed(range(len(pegs))):
        code = code * 3 + (int(pegs[d]) - 1)
    return code


def decode_state(code: int, n: int) -> tuple:
    if not 0 <= code < 3**n:
        raise HanoiError(f"state code {code} out of range for {n} discs")
    pegs = []
    for _ in range(n):
        code, digit = divmod(code, 3)
        pegs.append(digit + 1)
    return tuple(pegs)


def tower_state(n: int, peg) -> int:
    """Code of the configuration with every disc on ``peg``."""
    return (int(peg) - 1) * (3**n - 1) // 2


def _arcs(allowed) -> frozenset:
    if allowed is None:
        return ALL_ARCS
    arcs = getattr(allowed, "arcs", allowed)
    return frozenset((int(a), int(b)) for a, b in arcs)


def _successors(code: int, n: int, arcs: frozenset) -> list:
    tops = [None, None, None, None]
    place = 1
    places = []
    for d in range(n):
        code_digit = code // place % 3 + 1
        if tops[code_digit] is None:
            tops[code_digit] = d
        places.append(place)
        place *= 3
    out = []
    for a, b in arcs:
        d = tops[a]
        if d is None:
            continue
        top_b = tops[b]
        if top_b is not None and top_b < d:
            continue
        out.append((d, a, b, code + (b - a) * places[d]))
    return out


@lru_cache(maxsize=8)
def _transition_table(n: int, arcs: frozenset) -> tuple:
    return tuple(_successors(s, n, arcs) for s in range(3**n))


def _neighbours(n: int, arcs: frozenset):
    if n <= 9:
        table = _transition_table(n, arcs)
        return table.__getitem__
    return lambda code: _successors(code, n, arcs)


def legal_moves(state: int, n: int, allowed=None) -> list:
    """Every legal single-disc move from ``state`` along an allowed arc."""
    if not 0 <= state < 3**n:
        raise HanoiError(f"state code {state} out of range for {n} discs")
    return [
        (Move(d + 1, a, b), nxt)
        for d, a, b, nxt in sorted(_successors(state, n, _arcs(allowed)))
    ]


def reachable_count(n: int, start: int, allowed=None) -> int:
    arcs = _arcs(allowed)
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for *_, nxt in _successors(s, n, arcs):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return len(seen)


# --- weighted search -------------------------------------------------------

def _scaled_weights(weights: WeightMatrix):
    """Integer arc costs (exact mode) plus the common denominator."""
    if not weights.exact:
        return {arc: weights[arc] for arc in PAIRS}, None
    finite = [weights[arc] for arc in PAIRS if weights[arc] != INF]
    scale = math.lcm(*(v.denominator for v in finite)) if finite else 1
    costs = {
        arc: (INF if weights[arc] == INF else int(weights[arc] * scale)) for arc in PAIRS
    }
    return costs, scale


def _unscale(value, scale):
    if value == INF or scale is None:
        return value
    return Fraction(value, scale)


def _check_cap(n: int, cap: int):
    if n < 0:
        raise HanoiError("disc count must be nonnegative")
    if n > cap:
        raise CapExceeded(f"{n} discs exceeds the oracle cap of {cap} ({3**n} states)")


def _dijkstra(n: int, start: int, costs: dict, arcs: frozenset) -> list:
    # an arc of infinite cost is as good as absent
    arcs = frozenset(a for a in arcs if costs[a] != INF)
    dist = [INF] * 3**n
    dist[start] = 0
    heap = [(0, start)]
    succ = _neighbours(n, arcs)
    while heap:
        d, s = heapq.heappop(heap)
        if d > dist[s]:
            continue
        for _, a, b, nxt in succ(s):
            nd = d + costs[a, b]
            if nd < dist[nxt]:
                dist[nxt] = nd
                heapq.heappush(heap, (nd, nxt))
    return dist


def _endpoints(n, source, destination):
    return tower_state(n, as_peg(source)), tower_state(n, as_peg(destination))


def dijkstra_min_cost(
    weights: WeightMatrix, n: int, source, destination, cap: int = DEFAULT_STATE_CAP
) -> Cost:
    """Exact minimum cost over all legal move sequences (no recursion assumed)."""
    _check_cap(n, cap)
    start, goal = _endpoints(n, source, destination)
    if start == goal:
        return weights.zero
    costs, scale = _scaled_weights(weights)
    dist = _dijkstra(n, start, costs, ALL_ARCS)
    return _unscale(dist[goal], scale)


def dijkstra_lex(
    weights: WeightMatrix, n: int, source, destination, cap: int = DEFAULT_STATE_CAP
) -> LexCost:
    """Fewest moves among the minimum-cost move sequences.

    Dijkstra on (cost, moves) keys, valid because both components are
    nonnegative on every edge.
    """
    _check_cap(n, cap)
    start, goal = _endpoints(n, source, destination)
    if start == goal:
        return LexCost(weights.zero, 0)
    costs, scale = _scaled_weights(weights)
    arcs = frozenset(a for a in PAIRS if costs[a] != INF)
    best = [(INF, INF)] * 3**n
    best[start] = (0, 0)
    heap = [(0, 0, start)]
    succ = _neighbours(n, arcs)
    while heap:
        d, k, s = heapq.heappop(heap)
        if (d, k) > best[s]:
            continue
        if s == goal:
            break
        for _, a, b, nxt in succ(s):
            key = (d + costs[a, b], k + 1)
            if key < best[nxt]:
                best[nxt] = key
                heapq.heappush(heap, (key[0], key[1], nxt))
    d, k = best[goal]
    if d == INF:
        return LexCost(INF, 0)
    return LexCost(_unscale(d, scale), k)


def optimal_arcs(
    weights: WeightMatrix, n: int, source, destination, cap: int = DEFAULT_STATE_CAP
) -> set:
    """Arcs used by at least one minimum-cost move sequence.

    A move u -> v lies on some cheapest path iff
    dist(start, u) + w + dist(v, goal) equals the optimum. Distances to the
    goal come from a search on the transposed weights, since every move is
    reversible.
    """
    _check_cap(n, cap)
    start, goal = _endpoints(n, source, destination)
    costs, _ = _scaled_weights(weights)
    fwd = _dijkstra(n, start, costs, ALL_ARCS)
    optimum = fwd[goal]
    if optimum == INF or start == goal:
        return set()
    back = _dijkstra(n, goal, {(a, b): costs[b, a] for a, b in PAIRS}, ALL_ARCS)
    exact = weights.exact
    used = set()
    for s in range(3**n):
        if fwd[s] == INF or back[s] == INF:
            continue
        for _, a, b, nxt in _successors(s, n, ALL_ARCS):
            total = fwd[s] + costs[a, b] + back[nxt]
            if total == optimum if exact else abs(total - optimum) <= FLOAT_TOL:
                used.add((a, b))
    return used


def bfs_min_moves(allowed, n: int, source, destination, cap: int = DEFAULT_STATE_CAP) -> int:
    """Fewest moves using only the arcs of ``allowed``, ignoring costs."""
    _check_cap(n, cap)
    strongly_connected = getattr(allowed, "is_strongly_connected", None)
    if strongly_connected is False:
        raise Unreachable("movement digraph is not strongly connected")
    arcs = _arcs(allowed)
    start, goal = _endpoints(n, source, destination)
    depth = {start: 0}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        if s == goal:
            return depth[s]
        for *_, nxt in _successors(s, n, arcs):
            if nxt not in depth:
                depth[nxt] = depth[s] + 1
                queue.append(nxt)
    raise Unreachable(f"peg {int(destination)} unreachable from peg {int(source)}")


# --- random instances for verification runs -------------------------------

def random_weights(
    rng: random.Random, high: int = 10, tie_prob: float = 0.2, symmetric: bool = False
) -> WeightMatrix:
    """Integer weights in 0..high; with probability ``tie_prob`` one random
    arc is forced to equal the cost of the two-step detour around it."""
    w = [[0] * 3 for _ in range(3)]
    for i, j in PAIRS:
        if symmetric and i > j:
            continue
        w[i - 1][j - 1] = rng.randint(0, high)
        if symmetric:
            w[j - 1][i - 1] = w[i - 1][j - 1]
    if rng.random() < tie_prob:
        i, j = rng.choice(PAIRS)
        k = 6 - i - j
        w[i - 1][j - 1] = w[i - 1][k - 1] + w[k - 1][j - 1]
        if symmetric:
            w[j - 1][i - 1] = w[j - 1][k - 1] + w[k - 1][i - 1]
    return WeightMatrix(w)


__all__ = [
    "ALL_ARCS",
    "CapExceeded",
    "DEFAULT_STATE_CAP",
    "LexCost",
    "Unreachable",
    "bfs_min_moves",
    "decode_state",
    "dijkstra_lex",
    "dijkstra_min_cost",
    "encode_state",
    "legal_moves",
    "optimal_arcs",
    "random_weights",
    "reachable_count",
    "tower_state",
]
