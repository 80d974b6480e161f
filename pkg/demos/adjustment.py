"""Multi-valued functions and the adjusted relation.

mv(1, 2) has three members; the two singletons form the least full family.
Adjusting R = {<∅, {∅}>} tags each target with its source.
"""

from heytinglab import MVRelation, adjust, full_subsets, mv_enumerate, ordinal
from heytinglab.hfsets import EMPTY

one, two = ordinal(1), ordinal(2)
for R in mv_enumerate(one, two):
    print("member of mv(1,2):", R)
print("minimal full families:", [sorted(map(str, c)) for c in full_subsets(one, two, minimal=True)])
print("adjust({<{},{{}}>}) =", adjust(MVRelation([(EMPTY, one)], one, two)))
