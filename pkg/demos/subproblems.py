"""How many distinct subproblems the recursion touches, memoized or not."""
from weighted_hanoi.dp_solver import count_subproblems

print(f"{'n':>3} {'distinct':>9} {'naive calls':>12} {'6^(n-2)+4':>12}")
for n in range(1, 13):
    s = count_subproblems(n)
    print(f"{n:>3} {s.distinct_subproblems:>9} {s.naive_calls:>12} {s.paper_vn:>12}")
