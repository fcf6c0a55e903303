"""Fooling a view-based LOCAL algorithm on a cycle.

A view algorithm decides from the distance-t ball alone. Cut a short arc
around every chosen center, glue the arcs next to each other and put all
remaining nodes in one long stretch: each center sees exactly what it saw
before, so the same nodes are chosen, yet one stretch is now uncovered.

The last part shows the half-unit slack: when the long stretch has an odd
number of edges, its midpoint sits at floor(L/2), and the closed-form ratio
bound can overshoot by a little. A 5-cycle with three centers cannot reach
ratio 9/8 at all.
"""

from distkcenter import build_rearranged_cycle, lower_bound_ratio, make_view_algorithm

alg = make_view_algorithm("spacing", t=2, beta=1)
r = build_rearranged_cycle(alg, 40, 3)
print("centers on the canonical cycle:", r.centers_c)
print("segments kept around them:     ", r.segment_nodes)
print("rearranged order:              ", r.order)
print("centers chosen again:          ", r.centers_c_prime, f"(views identical: {r.views_identical})")
print(f"radius {r.radius_c_prime} vs OPT {r.opt_k}: ratio {r.ratio} = {float(r.ratio):.3f},"
      f" closed-form bound {float(r.lower_bound):.3f}")

print("\nratio as n grows (spacing rule, t = 1, k = 2):")
for n in (12, 20, 40, 80, 160):
    r = build_rearranged_cycle(make_view_algorithm("spacing", 1, 1), n, 2)
    print(f"  n={n:4d}: ratio {float(r.ratio):.3f}, bound {float(r.lower_bound):.3f}, limit k = 2")

r = build_rearranged_cycle(make_view_algorithm("spacing", 0, 1), 5, 3)
print(f"\n5-cycle, k = 3, t = 0: ratio {r.ratio}, closed-form bound {lower_bound_ratio(5, 3, 0, 1)},"
      f" long stretch {r.gap_length} edges -> far node at distance {r.far_gap_distance}")
