"""
Exploring the mutation class of Gr(3,6) (and, if asked, Gr(3,8)).

Seeds carry numerical values at random points over F_p, so cluster variables
are identified by value.  Each variable is then named as a Plücker
coordinate or a dihedral translate of X, Y, A, B, C or Z.

Pass --big to run Gr(3,8): about a minute, 25,080 seeds, 128 mutable
variables of which 80 are not Plücker coordinates.
"""

import sys
from collections import Counter

from grasstwist.quiver import explore

k, n = (3, 8) if "--big" in sys.argv else (3, 6)
r = explore(k, n)
print("Gr(%d,%d): %d seeds, %d variables (%d mutable, %d frozen)"
      % (k, n, r["seeds"], r["total"], r["mutable"], r["frozen"]))
kinds = Counter(row["identification"].kind for row in r["variables"] if not row["frozen"])
for kind, c in sorted(kinds.items()):
    print("  %-9s %d" % (kind, c))
for row in r["variables"]:
    if not row["frozen"] and row["identification"].kind != "Pluecker":
        print("  e.g.", row["identification"])
        break
