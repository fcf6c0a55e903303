"""Farthest-first greedy against the exhaustive optimum.

Draws a handful of random graphs, prints the greedy radius next to OPT_k,
then repeats the run with noisy (one-sided stretched) distances to show how
the guarantee degrades from 2 to 2 * alpha. Ends on the star whose hub has
the largest id, where greedy hits the factor 2 exactly.
"""

from fractions import Fraction

from distkcenter import gnp_graph, greedy_gonzalez, make_stretch_oracle, opt_k_bruteforce, star_graph

print("graph                       k  greedy  opt  ratio")
for seed in range(6):
    g = gnp_graph(11, 0.25, seed)
    for k in (1, 2, 3):
        sol = greedy_gonzalez(g, None, k)
        opt = opt_k_bruteforce(g, k).radius
        print(f"gnp(11, 0.25, seed={seed:<2})      {k}  {sol.radius:6d}  {opt:3d}  {sol.radius / opt:5.2f}")

print("\nstretched distances, k = 2, gnp(11, 0.25, seed=0)")
g = gnp_graph(11, 0.25, 0)
opt = opt_k_bruteforce(g, 2).radius
for alpha in (Fraction(1), Fraction(3, 2), Fraction(2)):
    worst = max(greedy_gonzalez(g, make_stretch_oracle(g, alpha, s), 2).radius for s in range(20))
    print(f"  alpha={str(alpha):>3}: worst radius over 20 oracles = {worst}, allowed {2 * alpha * opt}")

g = star_graph(8, center=8)
sol = greedy_gonzalez(g, None, 2)
print(f"\nstar with hub 8: greedy picks {sol.centers}, radius {sol.radius}; OPT_2 = {opt_k_bruteforce(g, 2).radius}")
