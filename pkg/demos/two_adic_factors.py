"""
Splitting a 2-adic lattice into DI4 and Coxeter factors
=======================================================

The exotic DI4 lattice sits next to B2 and A1 in a basis chosen to hide
the blocks; the partition finds them again.
"""

from normext.twoadic import (block_fixture, classify, classify_factor, coxeterize, di4_data, di4_invariants,
                             reflection_partition)

# %%
# The DI4 group is Z/2 x GL(3, F_2) acting on a rank-3 lattice over the
# 2-adic integers. The fixture stores generators to 64 digits; each load
# re-checks its defining invariants.
data = di4_data(16)
for name, ok in di4_invariants(data).items():
    print(f"{name:32s} {ok}")

# %%
# The block fixture mixes DI4, B2 and A1 through a unimodular change of
# basis. Reflections are grouped by the graph of non-commuting pairs.
lattice = block_fixture(12)
partition = reflection_partition(lattice)
for factor in partition.factors:
    print(classify_factor(factor), "rank", factor.rank, "precision 2^%d" % factor.lattice.precision)
print(sorted(classify(lattice)))

# %%
# Coxeter factors descend to integral lattices; DI4 does not.
for factor in partition.factors:
    tag = classify_factor(factor)
    if tag == "DI4":
        continue
    descent = coxeterize(factor)
    print(tag, "integral form of order", descent.lattice.group.order)
