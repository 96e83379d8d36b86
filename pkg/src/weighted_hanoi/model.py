"""Core domain types for the weighted three-peg Tower of Hanoi.

Pegs are numbered 1, 2, 3 everywhere in the public API. Costs are either
exact (``fractions.Fraction``) or binary floats; ``math.inf`` stands for a
forbidden (infinitely expensive) move in both modes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence, Union

Cost = Union[Fraction, float]

INF = math.inf

#: absolute tolerance for every cost comparison in float mode
FLOAT_TOL = 1e-9


class HanoiError(ValueError):
    """Base class for all errors raised by this package."""


class IllegalMove(HanoiError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"move {index}: {reason}")
        self.index = index
        self.reason = reason


class WrongFinalState(HanoiError):
    pass


class Peg(IntEnum):
    ONE = 1
    TWO = 2
    THREE = 3


PEGS = (Peg.ONE, Peg.TWO, Peg.THREE)

#: the six ordered peg pairs in the column order of the classic cost table
PAIRS = ((1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2))


def as_peg(value) -> Peg:
    try:
        return Peg(int(value))
    except (TypeError, ValueError):
        raise HanoiError(f"peg must be 1, 2 or 3, got {value!r}") from None


def intermediate_peg(i, j) -> Peg:
    """Return the third peg, the one distinct from both ``i`` and ``j``."""
    i, j = as_peg(i), as_peg(j)
    if i == j:
        raise HanoiError(f"intermediate peg undefined for i == j == {int(i)}")
    return Peg(6 - i - j)


# --- cost arithmetic -------------------------------------------------------

def parse_cost(value) -> Cost:
    """Convert a user-supplied weight to a cost.

    Accepts ints, Fractions, floats, the strings ``"inf"`` / ``"p/q"`` /
    ``"3"`` and ``math.inf``. Negative and NaN values are rejected.
    """
    if isinstance(value, bool):
        raise HanoiError(f"invalid weight {value!r}")
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "+inf"):
            return INF
        try:
            value = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise HanoiError(f"invalid weight {value!r}") from None
    elif isinstance(value, int):
        value = Fraction(value)
    elif isinstance(value, Fraction):
        pass
    elif isinstance(value, float):
        if math.isnan(value):
            raise HanoiError("weight is NaN")
    else:
        raise HanoiError(f"invalid weight {value!r}")
    if value < 0:
        raise HanoiError(f"weights must be nonnegative, got {value}")
    return value


def is_exact(value) -> bool:
    return isinstance(value, Fraction) or value == INF


def cost_lt(a: Cost, b: Cost, exact: bool = True) -> bool:
    if a == b:
        return False
    if exact or math.isinf(a) or math.isinf(b):
        return a < b
    return b - a > FLOAT_TOL


def cost_le(a: Cost, b: Cost, exact: bool = True) -> bool:
    return not cost_lt(b, a, exact)


def cost_eq(a: Cost, b: Cost, exact: bool = True) -> bool:
    return cost_le(a, b, exact) and cost_le(b, a, exact)


def format_cost(value: Cost) -> str:
    if value == INF:
        return "inf"
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else str(value)
    return repr(float(value))


def cost_to_json(value: Cost):
    """JSON-friendly form: ints for integral rationals, "p/q" otherwise."""
    if value == INF:
        return "inf"
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    return float(value)


# --- weights ---------------------------------------------------------------

@dataclass(frozen=True)
class WeightMatrix:
    """3x3 matrix of move costs, ``w[i, j]`` for a move from peg i to peg j.

    All finite entries share one arithmetic mode: exact when every input is
    an integer or rational, float as soon as one finite input is a float.
    The diagonal is forced to zero.
    """

    rows: tuple
    exact: bool = field(default=True)

    def __init__(self, rows: Sequence[Sequence]):
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise HanoiError("weight matrix must be 3x3")
        parsed = [[parse_cost(v) for v in r] for r in rows]
        exact = all(is_exact(v) for r in parsed for v in r)
        zero = Fraction(0) if exact else 0.0
        out = []
        for a in range(3):
            row = []
            for b in range(3):
                v = parsed[a][b]
                if a == b:
                    v = zero
                elif not exact and v != INF:
                    v = float(v)
                row.append(v)
            out.append(tuple(row))
        object.__setattr__(self, "rows", tuple(out))
        object.__setattr__(self, "exact", exact)

    def __getitem__(self, arc) -> Cost:
        i, j = arc
        return self.rows[int(i) - 1][int(j) - 1]

    @property
    def zero(self) -> Cost:
        return Fraction(0) if self.exact else 0.0

    def replace(self, updates: dict) -> "WeightMatrix":
        """Return a copy with ``{(i, j): value}`` entries overwritten."""
        rows = [list(r) for r in self.rows]
        for (i, j), v in updates.items():
            rows[int(i) - 1][int(j) - 1] = v
        return WeightMatrix(rows)

    def scaled(self, factor) -> "WeightMatrix":
        return WeightMatrix([[v * factor for v in r] for r in self.rows])

    def permuted(self, perm: dict) -> "WeightMatrix":
        """Relabel pegs: the cost of ``perm[i] -> perm[j]`` becomes ``w[i, j]``."""
        rows = [[None] * 3 for _ in range(3)]
        for i in PEGS:
            for j in PEGS:
                rows[perm[i] - 1][perm[j] - 1] = self[i, j]
        return WeightMatrix(rows)

    def is_symmetric(self) -> bool:
        return all(cost_eq(self[i, j], self[j, i], self.exact) for i, j in PAIRS)

    def tolist(self) -> list:
        return [list(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"weights": [[cost_to_json(v) for v in r] for r in self.rows]}

    @classmethod
    def uniform(cls, x) -> "WeightMatrix":
        return cls([[0, x, x], [x, 0, x], [x, x, 0]])


def weights_from_json(doc) -> WeightMatrix:
    """Build a matrix from the ``{"weights": [[...], [...], [...]]}`` format.

    JSON integers and ``"p/q"`` strings select exact arithmetic; JSON
    decimals select float arithmetic. Mixing decimals with rational strings
    is rejected.
    """
    if not isinstance(doc, dict) or "weights" not in doc:
        raise HanoiError('expected a JSON object with a "weights" key')
    rows = doc["weights"]
    if not isinstance(rows, list) or len(rows) != 3 or any(
        not isinstance(r, list) or len(r) != 3 for r in rows
    ):
        raise HanoiError('"weights" must be a 3x3 array')
    flat = [v for r in rows for v in r]
    has_float = any(isinstance(v, float) for v in flat)
    has_ratio = any(
        isinstance(v, str) and v.strip().lower() not in ("inf", "infinity", "+inf")
        for v in flat
    )
    if has_float and has_ratio:
        raise HanoiError("mixed decimal and rational weights are not allowed")
    for v in flat:
        if not isinstance(v, (int, float, str)) or isinstance(v, bool):
            raise HanoiError(f"invalid weight {v!r}")
    return WeightMatrix(rows)


# --- instances, moves, solutions ------------------------------------------

@dataclass(frozen=True)
class Instance:
    n: int
    source: Peg
    destination: Peg
    weights: WeightMatrix

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise HanoiError(f"disc count must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "source", as_peg(self.source))
        object.__setattr__(self, "destination", as_peg(self.destination))
        if not isinstance(self.weights, WeightMatrix):
            object.__setattr__(self, "weights", WeightMatrix(self.weights))


class Move(NamedTuple):
    """Move ``disc`` (1 = smallest) from peg ``src`` to peg ``dst``."""

    disc: int
    src: int
    dst: int

    def __str__(self):
        return f"disc {self.disc}: {self.src} -> {self.dst}"


@dataclass(frozen=True)
class Solution:
    moves: tuple
    total_cost: Cost
    move_count: int


def replay(instance: Instance, moves: Iterable[Move]) -> Solution:
    """Check a move list against the puzzle rules and price it.

    Starts from the full tower on ``instance.source``. Raises
    :class:`IllegalMove` on the first rule violation and
    :class:`WrongFinalState` if the tower does not end on the destination.
    """
    n = instance.n
    w = instance.weights
    stacks = {p: [] for p in PEGS}
    stacks[instance.source] = list(range(n, 0, -1))
    total = w.zero
    played = []
    for index, move in enumerate(moves):
        disc, src, dst = move
        if not 1 <= disc <= n:
            raise IllegalMove(index, f"no disc {disc}")
        if src not in stacks or dst not in stacks:
            raise IllegalMove(index, f"unknown peg in {src} -> {dst}")
        if src == dst:
            raise IllegalMove(index, "source and destination peg coincide")
        if not stacks[src] or stacks[src][-1] != disc:
            if disc in stacks[src]:
                raise IllegalMove(index, f"disc {disc} not topmost")
            raise IllegalMove(index, f"disc {disc} not on peg {src}")
        if stacks[dst] and stacks[dst][-1] < disc:
            raise IllegalMove(
                index, f"disc {disc} placed on smaller disc {stacks[dst][-1]}"
            )
        stacks[dst].append(stacks[src].pop())
        total = total + w[src, dst]
        played.append(Move(disc, int(src), int(dst)))
    if len(stacks[instance.destination]) != n:
        raise WrongFinalState(
            f"tower not complete on peg {int(instance.destination)} after {len(played)} moves"
        )
    return Solution(tuple(played), total, len(played))
