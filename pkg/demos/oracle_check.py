"""Compare the recursion with brute-force search over every configuration."""
import random

from weighted_hanoi import Instance, min_cost
from weighted_hanoi.oracle import dijkstra_lex, random_weights
from weighted_hanoi.dp_solver import generate_solution

rng = random.Random(1)
for n in range(1, 7):
    agree = 0
    for _ in range(50):
        w = random_weights(rng, tie_prob=0.4)
        inst = Instance(n, 1, 3, w)
        lex = dijkstra_lex(w, n, 1, 3)
        sol = generate_solution(inst)
        agree += lex == (min_cost(inst), sol.move_count)
    print(f"n={n}: {agree}/50 agree on cost and move count")
