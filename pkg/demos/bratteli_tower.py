"""A unital Bratteli tower whose ideal semilattices follow the three-chain tower.

Run: python3 demos/bratteli_tower.py > tower.dot
"""

import sys

from semirep.bergman import nabla_v, synth_tower, verify_squares
from semirep.boolean import synth_boolean_tower
from semirep.dot import emit_dot
from semirep.semilattice import chain

system, _ = synth_boolean_tower(chain(3), 6, "zero_one")
tower = synth_tower(system, 6, unital=True)

for i, shape in enumerate(tower.levels):
    print(f"level {i}: blocks {shape.block_sizes}", file=sys.stderr)
print("multiplicities:", tower.maps[0].entries, file=sys.stderr)

# the support map of [[1,0],[1,1]] is the transition a -> a, b -> a v b
r = nabla_v(tower, 0)
print("support map:", {r.source.labels[x]: r.target.labels[r(x)] for x in r.source},
      file=sys.stderr)
print("squares commute:", verify_squares(tower, system).ok, file=sys.stderr)

print(emit_dot(tower))
