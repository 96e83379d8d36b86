"""Forbidding moves by making them expensive enough."""
from weighted_hanoi import Instance, WeightMatrix, generate_solution
from weighted_hanoi.variants import C3, L3, respects_variant, synthesize_weights

base = WeightMatrix.uniform(1)
n = 4

for digraph in (L3, C3):
    w = synthesize_weights(digraph, base, n)
    report = respects_variant(w, n, digraph)
    sol = generate_solution(Instance(n, 1, 3, w))
    print(digraph.name, digraph.literal())
    for cond in report.per_forbidden_arc:
        a, b = cond.arc
        print(f"  w[{a},{b}] = {float(w[a, b]):.4f}  (threshold {cond.threshold})")
    print(f"  compatible={report.compatible}  moves={sol.move_count}")

# uniform weights never route around a direct move
print("uniform weights compatible with L3:", respects_variant(base, n, L3).compatible)
