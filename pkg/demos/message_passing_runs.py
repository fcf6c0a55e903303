"""The same greedy, run as message-passing programs.

The CONGEST version has to elect a leader, build a BFS tree and flood
maxima, so its round count scales with k times the diameter. The clique
version pays for distances up front and then needs exactly one round per
extra center. Both must land on the centralized greedy's centers.
"""

from distkcenter import (Model, ModelConfig, clique_kcenter, congest_kcenter, cycle_graph, diameter, gnp_graph,
                         greedy_gonzalez, path_graph)

graphs = {"cycle(24)": cycle_graph(24), "path(15)": path_graph(15), "gnp(12, 0.3)": gnp_graph(12, 0.3, 4)}
print(f"{'graph':14} k   D  congest rounds  (10kD)  max bits/budget  clique p1+p2  same centers")
for name, g in graphs.items():
    D = diameter(g)
    budget = ModelConfig(Model.CONGEST).budget_bits(g.n)
    for k in (1, 2, 4):
        ref = greedy_gonzalez(g, None, k)
        c_sol, c_st = congest_kcenter(g, k)
        q_sol, q_st = clique_kcenter(g, k)
        same = c_sol.center_set == q_sol.center_set == ref.center_set
        print(f"{name:14} {k}  {D:2d}  {c_st.rounds:14d}  {10 * k * D:6d}  {c_st.max_message_bits:8d}/{budget:<6d}"
              f"  {q_st.extra['phase1_rounds']:5d}+{q_st.extra['phase2_rounds']:<5d}  {same}")
