"""Resolve the three-element chain by a tower of Boolean semilattices.

Run: python3 demos/three_chain_tower.py
"""

from semirep.boolean import synth_boolean_tower, verify_cone
from semirep.semilattice import chain

S = chain(3)  # 0 < 1 < 2
print("target:", S.labels)

# three stages, every map preserving 0 and 1
system, cone = synth_boolean_tower(S, 3, "zero_one")

for i, B in enumerate(system.stages):
    print(f"stage {i}:", B.labels)

# the transition sends a to a and b to a v b at every step
for i, t in enumerate(system.transitions):
    print(f"transition {i}:", {t.source.labels[x]: t.target.labels[t(x)] for x in t.source})

# every leg sends a to 1 and b to 2
for i, leg in enumerate(cone.legs):
    print(f"leg {i}:", {leg.source.labels[x]: S.labels[leg(x)] for x in leg.source})

# {b} and {a,b} both go to 2; one transition later they already coincide
report = verify_cone(system, cone)
print("certified:", report.ok, "offset:", report.stabilization_offset)
for stage, x, y, k in report.merges:
    lab = system.stages[stage].labels
    print(f"  stage {stage}: {lab[x]} ~ {lab[y]} merged after {k} step")
print("pairs at the last stage left unchecked:", report.unchecked_pairs)
