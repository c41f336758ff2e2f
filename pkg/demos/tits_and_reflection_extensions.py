"""
Tits and reflection extensions of G2
====================================

Two constructions of an extension of the Weyl group by the reflection
module, compared class by class.
"""

from normext.catalog import build_entry
from normext.extensions import presentation_check, reflection_extension, tits_cocycle, tits_cocycle_raw
from normext.cochains import cohomologous
from normext.words import find_simple_system

entry = build_entry("G2_sc")
group = entry.lattice.group
simple = find_simple_system(group)
print("order", len(group), "reflections", len(group.reflections()), "simples", simple.simples)

# %%
# Before halving, the Tits cocycle only takes even values.
raw = tits_cocycle_raw(simple)
print("raw values", len(raw), "all even:", all(v % 2 == 0 for vec in raw.values() for v in vec))

# %%
# After halving it is cohomologous to the closed-form reflection cocycle.
# The witness is an explicit 1-cochain.
result = cohomologous(reflection_extension(group), tits_cocycle(simple))
print("cohomologous:", bool(result))

# %%
# Lifting the simple reflections into N(T) and checking the braid and
# square relations; for G2 the braid relation has length 6.
report = presentation_check(entry.torus, simple)
print(report.summary())
print("Coxeter matrix", report.coxeter_matrix)
