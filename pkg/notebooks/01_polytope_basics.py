# %% [markdown]
# # The polytope P_n and its facets
#
# A point of R^{4n} is stored as n columns of four counts, indexed by the
# group elements 0, a, b, g.  Writing each column as a multiset of group
# elements gives the compact "presentation" used throughout.

# %%
import numpy as np

from kimura3 import Flow, Point, enumerate_vertices, facets, is_member, vertex_of
from kimura3.polytope import facet_values

x = Point.from_presentation("aab/0bg/ggg")
print(x.presentation(), x.as_array().tolist())

# %% [markdown]
# Vertices are indexed by flows, tuples of group elements adding up to 0.
# There are 4^(n-1) of them.

# %%
for n in range(1, 6):
    print(n, len(enumerate_vertices(n)))
print([str(f) for f in enumerate_vertices(3)][:8])

# %% [markdown]
# Each odd subset A of the columns and each nonzero g give a facet form.
# A vertex sits at level 1 on every form, and the k-th dilation asks for
# level k or more.

# %%
n = 3
verts = np.array([vertex_of(f).columns for f in enumerate_vertices(n)])
vals = facet_values(verts)
print(len(facets(n)), "facet forms; vertex values range", vals.min(), "to", vals.max())

# %% [markdown]
# A sum of k vertices is always a member of kP_n, and its forms all have
# the parity of k.  The point aa/bb has equal column sums and a zero group
# sum, yet it fails one facet.

# %%
k = 5
flows = [Flow.parse(s) for s in ("0aa", "bb0", "g0g", "000", "abg")]
y = vertex_of(flows[0])
for f in flows[1:]:
    y = y + vertex_of(f)
print(y.presentation(), bool(is_member(y, k)))
print(((facet_values(y.as_array()[None]) - k) % 2 == 0).all())

bad = Point.from_presentation("aa/bb")
print(is_member(bad, 2))
