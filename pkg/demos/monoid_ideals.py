"""Refinement checks, the maximal semilattice quotient and ideals of small monoids.

Run: python3 demos/monoid_ideals.py
"""

from semirep.enumeration import commutative_monoids
from semirep.monoid import (FiniteCommutativeMonoid, idc, nabla, property_report,
                            riesz_counterexample, strong_rip_witness)

# 0, u, t with u + u = t and t absorbing
M = FiniteCommutativeMonoid([[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0, ["0", "u", "t"])
r = property_report(M)
print("refinement", r.refinement, "riesz", r.riesz, "conical", r.conical,
      "cancellative", r.cancellative)
print("witnesses:", {k: [M.labels[x] for x in v] for k, v in r.witnesses.items()})

N, proj = nabla(M)
print("nabla:", N.labels, "projection:", [N.labels[c] for c in proj])

L, theta = idc(M)
print("ideals:", L.labels)
print("theta:", {N.labels[x]: L.labels[theta(x)] for x in N})

# how often does Riesz decomposition hold among tables of each size?
for n in range(1, 5):
    tables = list(commutative_monoids(n))
    riesz = [T for T in tables if riesz_counterexample(T) is None]
    print(f"size {n}: {len(riesz)} of {len(tables)} tables satisfy Riesz")

# 2a + b = 2c + d in (Z+)^2, split through u, v, w, z
u, v, w, z = strong_rip_witness(2, (1, 0), (0, 2), (0, 1), (2, 0))
print("u v w z:", u, v, w, z)
