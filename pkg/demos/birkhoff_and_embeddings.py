"""Join-irreducibles, lower sets and Boolean embeddings of small lattices.

Run: python3 demos/birkhoff_and_embeddings.py
"""

from semirep.boolean import embed_boolean, extend_hom, triangle_factor
from semirep.dot import emit_dot
from semirep.order import FinitePoset, birkhoff, lower_sets
from semirep.semilattice import (SemilatticeHom, boolean_lattice, chain,
                                 distributivity_counterexample, from_order)

# a poset with two minimal elements under a common top
P = FinitePoset(["x", "y", "z"], [("x", "z"), ("y", "z")])
H = lower_sets(P)
print("lower sets:", H.labels)
print(emit_dot(H))

# Birkhoff recovers P (up to relabelling) from its lattice of lower sets
Q, tau = birkhoff(H)
print("join-irreducibles:", Q.labels, "covers:", Q.covers())

# M3: three atoms with a common join; no decomposition of a below b v c
M3 = from_order(["0", "a", "b", "c", "1"],
                lambda x, y: x == y or x == 0 or y == 4)
a, b0, b1 = distributivity_counterexample(M3)
print("M3 fails at", M3.labels[a], "<=", M3.labels[b0], "v", M3.labels[b1])

# s -> {meet-irreducibles not above s}
B, j = embed_boolean(chain(3), "meet_irreducible")
print("chain into", B.labels, ":", [B.labels[v] for v in j.map])

# extend a map given on {0, 1} of the square to the whole square
square = boolean_lattice(["a", "b"])
g = extend_hom(square, {0: 0, 3: 2}, chain(3))
print("extension:", {square.labels[x]: g(x) for x in square})

# factor a map through a Boolean semilattice with the same kernel
f = SemilatticeHom(square, chain(3), [0, 1, 2, 2])
Bf, phi, gf = triangle_factor(f)
print("kernel blocks:", [[square.labels[x] for x in blk] for blk in phi.kernel().blocks])
