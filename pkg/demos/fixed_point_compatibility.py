"""
Normalizer extensions and fixed points in the torus
===================================================

For a subgroup A of the torus, the stabilizer W_A acts on the centralizer
of A. Its normalizer extension should agree with the restriction of the
big one. This demo runs the check and shows where the pieces come from.
"""

from fractions import Fraction

from normext.catalog import build_entry
from normext.cohomology import centralizer_compat_check, fixing_subgroup, vanishing_check

HALF = Fraction(1, 2)

# %%
# In A2 the point (1/2, 0) is fixed by a reflection subgroup, and every
# piece over a reflection outside W_A vanishes.
for name, point in (("A2_sc", (HALF, 0)), ("B3_sc", (HALF, 0, 0))):
    entry = build_entry(name)
    group = entry.lattice.group
    fixers = fixing_subgroup(entry.torus, [point])
    minus = tuple(tuple(-int(i == j) for j in range(group.dim)) for i in range(group.dim))
    minus_fixes = minus in group and group.find(minus) in fixers
    print(f"{name}: |W_A| = {len(fixers)}, -1 in W_A: {minus_fixes}")
    surviving = []
    for cls in group.conjugacy_classes(group.reflections()):
        for x, inside, trivial in vanishing_check(group, fixers, cls[0]):
            if not inside and not trivial:
                surviving.append(x)
    print(f"  pieces outside W_A that do not vanish: {len(surviving)}")
    print(f"  {centralizer_compat_check(entry.torus, [point]).summary()}")

# %%
# In B3 the element -1 fixes every point of order two. It commutes with
# each reflection and negates its root, so the outside pieces can carry a
# nonzero class. The comparison of the two extensions still holds.
