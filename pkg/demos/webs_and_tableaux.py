"""
Webs: enumeration, skein reduction and the two-row Khovanov-Kuperberg map.
"""

from grasstwist.web import (Web, enumerate_nonelliptic, invariant_dimension, kk_two_row,
                            skein_reduce, standard_two_row_tableaux)

# Non-elliptic webs with seven black boundary vertices and one white one.
bc = "WBBBBBBB"
webs = enumerate_nonelliptic(bc)
print("%s: %d non-elliptic webs, invariant space has dimension %d"
      % (bc, len(webs), invariant_dimension(bc)))
print("  without boundary-to-boundary paths:", sum(1 for W in webs if not W.paths()))

# A tripod with a closed loop reduces to 3 times the tripod.
W = Web.parse("BBB | -1W:0,1,2 | 0=-1/1 1=-1/2 2=-1/3 | loops=1")
print("tripod with a loop ->", skein_reduce(W))

# Each standard tableau of shape (3,3) gives a non-crossing matching.
for top, bottom in standard_two_row_tableaux(3):
    print("  top %s bottom %s -> %s" % (top, bottom, kk_two_row(top, bottom).pairs))
