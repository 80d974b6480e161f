"""From a covering relation to a frame.

A downset covering gives every lower set; the dense covering keeps only the
double-negation stable ones.  The implication table is the right adjoint of
meet, and Booleanizing keeps the regular elements.
"""

from heytinglab import booleanize, corpus

for name in ("vee", "dense_vee", "joincover"):
    f = corpus.frame(name)
    print(f"{name}: {len(f)} elements, boolean={f.is_boolean()}")
    for e in f.elements:
        print("   ", sorted(e.atoms), "-> neg", sorted(f.neg(e).atoms))

f = corpus.frame("vee")
a, b = f.element(["a"]), f.element(["b"])
print("a -> b in vee:", sorted(f.implies(a, b).atoms))
print("a v b in vee:", sorted(f.join(a, b).atoms))
print("Booleanization of vee:", [sorted(e.atoms) for e in booleanize(f).elements])
