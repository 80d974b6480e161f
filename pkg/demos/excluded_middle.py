"""Excluded middle on the three-element chain.

The frame has elements ∅ ⊂ {0} ⊂ {0,1}.  A name b that contains ∅ "to
degree {0}" makes ``∅ ∈ b`` undecided: its value is neither ⊥ nor ⊤, and
neither is the value of its excluded-middle instance.  Passing to the
Booleanization (double-negation stable elements) restores it.
"""

from heytinglab import Environment, Name, eval, eval_boolean, parse
from heytinglab.corpus import peirce, three_chain

f = three_chain()
print("frame elements:", [list(e.atoms) for e in f.elements])

empty = Name(f)
b = Name(f, [(empty, f.element(["0"]))])
env = Environment({"b": b, "P": b, "Q": empty, "R": empty}, (), f)

atom = parse("empty in b", ["b"])
lem = parse("empty in b | ~(empty in b)", ["b"])
print("[[empty in b]]               =", list(eval(atom, env).atoms))
print("[[~(empty in b)]]            =", list(eval(parse("~(empty in b)", ["b"]), env).atoms))
print("[[LEM]] in the base frame    =", list(eval(lem, env).atoms))
print("[[LEM]] in the Booleanization =", list(eval_boolean(lem, env).atoms))
print("[[Peirce]] with P := b       =", list(eval(peirce(), env).atoms))
