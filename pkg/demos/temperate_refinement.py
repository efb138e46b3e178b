"""Exact refinement in a temperate power of Q over a lattice of sets.

Run: python3 demos/temperate_refinement.py
"""

from fractions import Fraction as F

from semirep.order import FinitePoset
from semirep.temperate import (RationalVector, SetLatticeD, bd_closure, lift_tower,
                               propto_witness, refinement_witness, verify_lift_dlat)
from semirep.semilattice import chain

# D = lower sets of p < q
D = SetLatticeD.from_poset(FinitePoset(["p", "q"], [("p", "q")]))
print("D:", D.as_semilattice().labels)
print("generated Boolean ring:", sorted(sorted(s) for s in bd_closure(D)))

f0 = RationalVector([F(1, 2), 0])
f1 = RationalVector([F(3, 2), F(2, 3)])
g0 = RationalVector([1, F(1, 3)])
g1 = RationalVector([1, F(1, 3)])
assert f0 + f1 == g0 + g1

h = refinement_witness(f0, f1, g0, g1, D)
for i in range(2):
    for j in range(2):
        print(f"h{i}{j} =", h[i][j])
print("rows:", h[0][0] + h[0][1] == f0, h[1][0] + h[1][1] == f1)
print("cols:", h[0][0] + h[1][0] == g0, h[0][1] + h[1][1] == g1)

# f0 sits below a multiple of g0
print("N with N*g0 - f0 positive:", propto_witness(f0, g0, D))

print("support map certified:", verify_lift_dlat(D).ok)

# lift the inclusion {0, 2} into the full chain 0 < 1 < 2
t = lift_tower(chain(3), [[0, 2], [0, 1, 2]])
print("posets:", [P.labels for P in t.posets], "matrix:", t.matrices[0], "ok:", t.ok)
