"""
The degree-two variable X^{123567} of Gr(3,7) as a sum over double dimers.

A double dimer is a multiset of edges covering every internal vertex twice.
Its weight carries a factor 2 per closed loop; the signed pairing of the
boundary paths decides whether it counts towards X or towards Y.
"""

from grasstwist.harness import double_dimer_partition, load_graph, verify_thm_4_1

G = load_graph("gr37")
S = (1, 2, 3, 5, 6, 7)
for kind in ("X", "Y"):
    Z, count = double_dimer_partition(G, kind, S)
    print("%s^{%s}: %d double dimers" % (kind, "".join(map(str, S)), count))
    for term in str(Z).split(" + "):
        print("   ", term)

rep = verify_thm_4_1(7, S, graph=G, seed=3)
print(rep.to_text())
