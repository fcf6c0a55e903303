"""The LOCAL algorithm's two branches on cycles.

Node 1 grows a BFS tree of depth ceil((2 + 4/eps) k). On a short cycle the
tree spans everything and node 1 simply runs the greedy; on a long cycle it
gives up and names itself the only center, which is still within
(2 + eps) k of optimal because the cycle is long.
"""

from fractions import Fraction

from distkcenter import bfs_depth, cycle_graph, cycle_opt_k, local_kcenter_alg1

print("   n  k  eps  depth  branch     radius  opt  radius/opt  allowed")
for n in (8, 16, 30, 50, 80):
    for k in (1, 2):
        for eps in (1, 2):
            sol, st = local_kcenter_alg1(cycle_graph(n), k, eps)
            opt = cycle_opt_k(n, k)
            _, R = bfs_depth(k, eps)
            print(f"{n:4d}  {k}  {eps:3d}  {R:5d}  {st.extra['branch']:9}  {sol.radius:6d}  {opt:3d}"
                  f"  {sol.radius / opt:10.2f}  {float((2 + Fraction(eps)) * k):7.1f}")
