"""Three discs, asymmetric weights: the cost table and the plan it builds."""
from weighted_hanoi import Instance, WeightMatrix, compute_cost_table, generate_solution

w = WeightMatrix([[0, 3, 15], [8, 0, 2], [5, 6, 0]])

# each cell shows both branches; the starred one is the minimum
table = compute_cost_table(w, 3)
print(table.format())
print()

sol = generate_solution(Instance(3, 1, 3, w))
for move in sol.moves:
    print(f"disc {move.disc}: {move.src} -> {move.dst}")
print("total", sol.total_cost, "in", sol.move_count, "moves")
