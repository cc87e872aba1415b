"""
Twisting a single Plücker coordinate in Gr(3,7).

The twist of a Plücker coordinate is a Laurent polynomial in the face labels of
a plabic graph; each term comes from one dimer with the given boundary.  We
print the dimers, their face weights, and check the sum against the closed
form (456)(157) at random points.
"""

from grasstwist.algebra import Evaluator, random_point
from grasstwist.dimer import DimerModel
from grasstwist.field import PrimeField, make_rng
from grasstwist.harness import load_graph
from grasstwist.laurent import LaurentExpr

G = load_graph("gr37")
dm = DimerModel(G)
J = (3, 4, 6)

print("dimers of %s with boundary %s:" % (G.name, J))
for D in dm.enumerate(J):
    print("  edges %-30s weight %s" % (",".join(map(str, D.edge_list())), dm.face_weight(D)))

Z = dm.twist_partition(J)
print("partition function:", Z)

F = PrimeField((1 << 61) - 1)
rng = make_rng(1)
closed = LaurentExpr.parse("(157)(456)")
for _ in range(3):
    p = Evaluator(random_point(3, 7, F, rng))
    lhs = Z.evaluate(p.values, F)
    assert lhs == p.twisted_delta(J) == closed.evaluate(p.values, F)
print("equals the twisted minor and (157)(456) at 3 random points")
