from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from weighted_hanoi.dp_solver import (
    InfiniteCost,
    NotSymmetric,
    check_table,
    compute_cost_table,
    count_subproblems,
    generate_solution,
    iter_moves,
    min_cost,
    move_count_bounds,
    plan_summary,
    symmetric_cost,
    table_from_dict,
    uniform_cost,
    vn_formula,
)
from weighted_hanoi.model import INF, PAIRS, Instance, Move, WeightMatrix, replay
from weighted_hanoi.oracle import dijkstra_min_cost

from conftest import small_weights, tiny_weights


# Table of the worked example: (L, R) per ordered pair for m = 1, 2, 3.
EXAMPLE_TABLE = {
    1: {(1, 2): (3, 21), (1, 3): (15, 5), (2, 1): (8, 7),
        (2, 3): (2, 23), (3, 1): (5, 14), (3, 2): (6, 8)},
    2: {(1, 2): (14, 34), (1, 3): (20, 20), (2, 1): (15, 24),
        (2, 3): (14, 33), (3, 1): (18, 29), (3, 2): (14, 22)},
    3: {(1, 2): (37, 64), (1, 3): (43, 63), (2, 1): (40, 51),
        (2, 3): (37, 65), (3, 1): (34, 70), (3, 2): (38, 50)},
}


class TestCostTable:
    def test_example_branches(self, example):
        table = compute_cost_table(example, 3)
        for m, row in EXAMPLE_TABLE.items():
            for pair, (left, right) in row.items():
                e = table.entry(m, *pair)
                assert (e.branches.left, e.branches.right) == (left, right), (m, pair)
                assert e.cost == min(left, right)

    def test_tie_goes_left(self, example):
        e = compute_cost_table(example, 2).entry(2, 1, 3)
        assert e.branches == (20, 20) and e.chose_left and e.cost == 20

    def test_base_row_is_zero(self, example):
        table = compute_cost_table(example, 0)
        assert all(table.cost(0, *p) == 0 for p in PAIRS)

    def test_check_table_finds_tampering(self, example):
        table = compute_cost_table(example, 3)
        assert check_table(table) == []
        doc = table.to_dict()
        doc["rows"][2]["cells"]["1->3"]["cost"] = 19
        assert check_table(table_from_dict(doc)) != []

    def test_dict_round_trip(self, example):
        table = compute_cost_table(example, 4)
        again = table_from_dict(table.to_dict())
        assert again.rows == table.rows
        assert check_table(again) == []

    def test_round_trip_with_infinity_and_rationals(self):
        w = WeightMatrix([[0, "1/2", "inf"], [1, 0, 3], ["inf", 2, 0]])
        table = compute_cost_table(w, 3)
        assert table_from_dict(table.to_dict()).rows == table.rows

    def test_format_stars_ties(self, example):
        text = compute_cost_table(example, 3).format()
        assert "20*" in text and "43*" in text
        assert text.count("20*") == 2

    @settings(max_examples=150, deadline=None)
    @given(small_weights, st.integers(1, 8))
    def test_recursion_consistency(self, w, n):
        assert check_table(compute_cost_table(w, n)) == []

    @settings(max_examples=150, deadline=None)
    @given(small_weights, st.integers(1, 8))
    def test_monotone_in_disc_count(self, w, n):
        table = compute_cost_table(w, n)
        for m in range(1, n + 1):
            for p in PAIRS:
                assert table.cost(m, *p) >= table.cost(m - 1, *p)

    @settings(max_examples=150, deadline=None)
    @given(small_weights, st.integers(0, 8))
    def test_triangle_inequality(self, w, n):
        table = compute_cost_table(w, n)
        for m in range(n + 1):
            for i, j in PAIRS:
                k = 6 - i - j
                assert table.cost(m, i, k) <= table.cost(m, i, j) + table.cost(m, j, k)


class TestMinCost:
    def test_example(self, example):
        assert min_cost(Instance(3, 1, 3, example)) == 43

    @pytest.mark.parametrize("x", [1, 3, Fraction(1, 2)])
    def test_uniform(self, x):
        assert min_cost(Instance(5, 1, 3, WeightMatrix.uniform(x))) == 31 * x

    def test_zero_discs(self, example):
        assert min_cost(Instance(0, 1, 3, example)) == 0

    def test_same_source_and_destination(self, example):
        assert min_cost(Instance(4, 2, 2, example)) == 0

    def test_infinite_when_peg_unreachable(self):
        w = WeightMatrix([[0, "inf", "inf"], [1, 0, 1], [1, 1, 0]])
        assert min_cost(Instance(2, 1, 3, w)) == INF

    def test_float_mode(self):
        w = WeightMatrix([[0, 0.1, 0.3 + 5e-10], [0.1, 0, 0.2], [0.3, 0.2, 0]])
        # the detour is cheaper by less than the tolerance: counts as a tie
        sol = generate_solution(Instance(1, 1, 3, w))
        assert sol.moves == (Move(1, 1, 3),)


class TestGenerateSolution:
    def test_example_plan(self, example):
        inst = Instance(3, 1, 3, example)
        sol = generate_solution(inst)
        assert sol.total_cost == 43
        assert replay(inst, sol.moves) == sol
        # 43 = C2(1,2) + C2(2,3) + w13: the largest disc moves once, directly
        big = [i for i, m in enumerate(sol.moves) if m.disc == 3]
        assert [sol.moves[i] for i in big] == [Move(3, 1, 3)]
        head = replay(Instance(2, 1, 2, example), sol.moves[: big[0]])
        tail = replay(Instance(2, 2, 3, example), sol.moves[big[0] + 1:])
        assert (head.total_cost, tail.total_cost) == (14, 14)

    def test_tie_at_single_disc_uses_one_move(self):
        w = WeightMatrix([[0, 1, 2], [9, 0, 1], [9, 9, 0]])
        sol = generate_solution(Instance(1, 1, 3, w))
        assert sol.moves == (Move(1, 1, 3),)
        assert sol.total_cost == 2

    def test_uniform_is_classic(self):
        sol = generate_solution(Instance(3, 1, 3, WeightMatrix.uniform(5)))
        assert sol.move_count == 7 and sol.total_cost == 35
        assert [m.disc for m in sol.moves] == [1, 2, 1, 3, 1, 2, 1]

    def test_empty(self, example):
        assert generate_solution(Instance(0, 1, 3, example)).moves == ()

    def test_infinite_cost_raises(self):
        w = WeightMatrix([[0, "inf", "inf"], [1, 0, 1], [1, 1, 0]])
        with pytest.raises(InfiniteCost):
            generate_solution(Instance(2, 1, 3, w))

    def test_streaming_matches(self, example):
        inst = Instance(5, 2, 1, example)
        assert tuple(iter_moves(inst)) == generate_solution(inst).moves

    def test_plan_summary_matches_emitted(self, example):
        table = compute_cost_table(example, 6)
        for i, j in PAIRS:
            sol = generate_solution(Instance(6, i, j, example))
            count, arcs = plan_summary(table, 6, i, j)
            assert count == sol.move_count
            assert arcs == {(m.src, m.dst) for m in sol.moves}

    def test_plan_summary_large_n(self):
        table = compute_cost_table(WeightMatrix.uniform(1), 200)
        assert plan_summary(table, 200, 1, 3)[0] == 2**200 - 1

    @settings(max_examples=100, deadline=None)
    @given(tiny_weights, st.integers(1, 6), st.sampled_from(PAIRS))
    def test_plan_is_legal_and_priced_by_table(self, w, n, pair):
        inst = Instance(n, *pair, w)
        sol = generate_solution(inst)
        assert replay(inst, sol.moves).total_cost == min_cost(inst)
        lo, hi = move_count_bounds(n)
        assert lo <= sol.move_count <= hi

    @settings(max_examples=100, deadline=None)
    @given(small_weights, st.integers(1, 6), st.sampled_from([2, 3, Fraction(1, 3), Fraction(7, 2)]))
    def test_scaling_covariance(self, w, n, lam):
        inst = Instance(n, 1, 3, w)
        scaled = Instance(n, 1, 3, w.scaled(lam))
        assert min_cost(scaled) == lam * min_cost(inst)
        assert generate_solution(scaled).moves == generate_solution(inst).moves


class TestSymmetric:
    SYM = WeightMatrix([[0, 1, 5], [1, 0, 1], [5, 1, 0]])

    def test_single_disc(self):
        assert symmetric_cost(self.SYM, 1, 1, 3) == 2

    def test_two_discs_matches_general_and_exhaustive(self):
        # exhaustive search is the independent reference
        expected = dijkstra_min_cost(self.SYM, 2, 1, 3)
        assert symmetric_cost(self.SYM, 2, 1, 3) == expected
        assert compute_cost_table(self.SYM, 2).cost(2, 1, 3) == expected

    def test_rejects_asymmetric(self, example):
        with pytest.raises(NotSymmetric):
            symmetric_cost(example, 2, 1, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 10), min_size=3, max_size=3), st.integers(0, 10))
    def test_matches_general_table(self, v, n):
        a, b, c = v
        w = WeightMatrix([[0, a, b], [a, 0, c], [b, c, 0]])
        table = compute_cost_table(w, n)
        for i, j in PAIRS:
            assert symmetric_cost(w, n, i, j) == table.cost(n, i, j) == table.cost(n, j, i)


class TestClosedForms:
    @pytest.mark.parametrize("n,x,expected", [(3, 1, 7), (0, 5, 0), (10, 2, 2046)])
    def test_uniform_cost(self, n, x, expected):
        assert uniform_cost(n, x) == expected

    def test_uniform_cost_rational(self):
        assert uniform_cost(4, "1/2") == Fraction(15, 2)

    @pytest.mark.parametrize("n,bounds", [(3, (7, 26)), (0, (0, 0)), (5, (31, 242))])
    def test_move_count_bounds(self, n, bounds):
        assert move_count_bounds(n) == bounds


class TestSubproblemCounts:
    @pytest.mark.parametrize("n,distinct,vn", [(0, 0, 0), (1, 1, 1), (2, 4, 4)])
    def test_small_cases(self, n, distinct, vn):
        stats = count_subproblems(n)
        assert (stats.distinct_subproblems, stats.paper_vn) == (distinct, vn)

    @pytest.mark.parametrize("n", range(3, 12))
    def test_distinct_count_closed_form(self, n):
        # four pairs one level down, then all six pairs on each lower level
        assert count_subproblems(n).distinct_subproblems == 4 + 6 * (n - 2)

    def test_formula_values(self):
        assert vn_formula(5) == 220
        assert count_subproblems(5).paper_vn == 220

    @pytest.mark.parametrize("n", [1, 2, 3, 6, 10])
    def test_naive_calls_instrumented(self, n):
        assert count_subproblems(n).naive_calls == (4**n - 1) // 3

    def test_naive_calls_extrapolated(self):
        stats = count_subproblems(20)
        assert stats.naive_calls_extrapolated
        assert stats.naive_calls == (4**20 - 1) // 3
