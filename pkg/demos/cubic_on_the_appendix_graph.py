"""
The twist of sigma^2(A) on the Gr(3,8) graph used in the appendix tables.

A is cubic in Plücker coordinates.  Its twist is a weighted sum of triple
dimers: only triple dimers whose web is the (rotated) batwing contribute, with
coefficient equal to the number of consistent colorings.  One triple dimer has
coefficient 2.
"""

from grasstwist.algebra import is_frozen
from grasstwist.expressions import ClusterExpression
from grasstwist.harness import cubic_contributions, load_graph, named_web, verify_cubic

G = load_graph("gr38_appendix")
labels = sorted("".join(map(str, f)) for f in G.face_labels.values() if f and not is_frozen(f, 8))
print("mutable face labels:", " ".join(labels))
E = ClusterExpression("A", 2)
print("web of A:", named_web("batwing").serialize())
rows, info = cubic_contributions(G, E)
print("%d contributing triple dimers out of %d" % (len(rows), info["direct"]))
for D, c, w in rows:
    print("  %d x %s" % (c, w))

print(verify_cubic("A", 2, False, graph=G, seed=5).to_text())
