"""Regularity among small transitive hereditarily finite sets.

Every transitive subset of V_4 with at most eight members is tested for
second-order Strong Collection.  These rows are evidence about tiny sets
only; no scheme-level claim follows from them.
"""

from collections import Counter

from heytinglab import census, is_regular, ordinal

rows = census(4, 8)
print("transitive sets checked:", len(rows))
print("regular:", [r["set"] for r in rows if r["regular"]])
print("pairing-closure statuses:", dict(Counter(r["pairing_closure"] for r in rows)))

v = is_regular(ordinal(2))
a, R = v.witness
print(f"2 is not regular: a = {a}, R = {R} admits no b in 2 with R: a ⇄ b")
