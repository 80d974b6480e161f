"""Stages of a finite inductive definition.

Each stage applies the rules to everything derived so far; the union of the
stages is the least closed set, and ``3 => 3`` never fires.
"""

from pathlib import Path

from heytinglab.inductive import iteration_class, least_fixed_point, load_rules, stabilization_index, verify_minimality

phi = load_rules(Path(__file__).parent / "inputs" / "chain.rules")
for n, stage in enumerate(iteration_class(phi, 4)):
    print(f"J^{n} =", sorted(stage))
print("least fixed point:", sorted(least_fixed_point(phi)))
print("stabilizes at stage", stabilization_index(phi), "|", "minimal:", verify_minimality(phi))
