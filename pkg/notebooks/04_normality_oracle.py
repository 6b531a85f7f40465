# %% [markdown]
# # Checking normality by brute force
#
# Two independent enumerations: every lattice point of kP_n found by
# filtering integer points through the facet inequalities, and every sum of
# k vertices found by iterated Minkowski addition.  Normality says the two
# sets agree.

# %%
from kimura3.oracle import (
    enumerate_dilation_lattice_points,
    enumerate_vertex_sums,
    exhaustive_decompose,
    verify_normality,
)
from kimura3.polytope import Point

for n, k in [(2, 2), (2, 3), (3, 2), (3, 3)]:
    lat = set(enumerate_dilation_lattice_points(n, k))
    sums = enumerate_vertex_sums(n, k)
    print(n, k, len(lat), lat == sums)

# %% [markdown]
# `verify_normality` does the same comparison and also runs the main
# decomposition on every lattice point.

# %%
rep = verify_normality(3, 4)
print(rep.lattice_member_count, rep.sum_reachable_count, rep.decomposed_count, rep.normal)

# %% [markdown]
# The exhaustive search finds no decomposition of aa/bb.

# %%
print(exhaustive_decompose(Point.from_presentation("aa/bb"), 2))
