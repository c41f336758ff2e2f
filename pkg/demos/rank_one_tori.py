"""
Rank one: SU(2), SO(3) and U(2)
===============================

The three connected compact groups with Weyl group of order two, seen
through their marked reflection tori.
"""

from normext.catalog import build_entry, nt_model
from normext.extensions import split_check
from normext.lattice import markings_of

# %%
# A reflection of a lattice can carry one or two markings. It carries two
# exactly when it is trivial mod 2, which happens for both rank-one
# lattices but not for the swap in U(2).
for name in ("SU(2)", "SO(3)", "U(2)"):
    entry = build_entry(name)
    group = entry.lattice.group
    (sigma,) = group.reflections()
    options = markings_of(group.elements[sigma])
    print(f"{name:6s} reflection {group.elements[sigma]} has {len(options)} marking(s)")

# %%
# The torus marking is half the chosen root vector, read mod 1.
for name in ("SU(2)", "SO(3)", "U(2)"):
    torus = build_entry(name).torus
    print(f"{name:6s} torus marking", *(tuple(map(str, h)) for h in torus.markings.values()))

# %%
# Splitting. A witness is a 1-cochain whose coboundary is the extension
# cocycle; when none exists the group N(T) is not a semidirect product.
for name in ("SU(2)", "SO(3)", "U(2)"):
    verdict = split_check(nt_model(build_entry(name)))
    print(f"{name:6s} {'split' if verdict else 'nonsplit'}")

# %%
# U(2) comes out split: the permutation matrices normalize the diagonal
# torus and form a complement. The acceptance suite carries this as a
# known deviation (criterion 6) instead of forcing the expected verdict.
