"""Encoding set disjointness in a graph's 1-center radius.

Alice's string picks which A-nodes touch cbar_A, Bob's which B-nodes touch
cbar_B. If some index is set in both strings, the matching a-node reaches
everything within 3 hops; otherwise every node has eccentricity at least 4.
Deciding between 3 and 4 therefore decides disjointness, and only the
O(log ell) bit-encoding edges cross between the two halves.
"""

from distkcenter import DisjointnessInstance, build_gkxy, build_gxy, verify_claim2, verify_lemma4

for x, y in [("1010", "0101"), ("1010", "0110"), ("11110000", "00001111"), ("10000001", "00000001")]:
    inst = DisjointnessInstance(len(x), x, y)
    rep = verify_lemma4(inst)
    gg = build_gxy(inst)
    print(f"x={x} y={y} disjoint={inst.disjoint!s:5}  n={gg.graph.n:2d}  OPT_1={rep['opt1']}"
          f"  optimal centers {rep['optimal_centers'][:4]}")

inst = DisjointnessInstance(4, "1100", "0110")
g2 = build_gkxy(inst, 2)
rep = verify_claim2(inst, 2)
print(f"\ntwo copies glued at w^2: n={g2.graph.n}, OPT_2={rep['opt_k']},"
      f" {rep['near_optimal_sets']} near-optimal pairs, all one-per-copy: {rep['ok']}")
