# %% [markdown]
# # Symmetries and the normal form
#
# Three groups act on P_n: permutations of the columns, translation of
# every column by a flow, and the six automorphisms of the Klein group.
# A combined action is a `SymmetryOp`.

# %%
from kimura3 import Flow, Point, SymmetryOp, apply, canonicalize, vertex_of
from kimura3.symmetry import exists_all_zero_max_shift, generators

x = Point.from_presentation("ab/ab")
print(apply(SymmetryOp.shift((1, 1)), x).presentation())

# %% [markdown]
# The generators permute the vertex set.

# %%
n = 4
from kimura3 import enumerate_vertices

verts = {vertex_of(f) for f in enumerate_vertices(n)}
print(all({apply(op, v) for v in verts} == verts for op in generators(n)))

# %% [markdown]
# The normal form sorts columns so the most concentrated multiset comes
# first and the least concentrated last, then shifts each earlier column
# so that 0 is its most frequent element.

# %%
x = Point.from_presentation("00a/0bb/agg")
c = canonicalize(x, 3)
print(c.point.presentation(), c.op)
print(apply(c.op, x) == c.point, apply(c.op.inverse(), c.point) == x)

# %% [markdown]
# Sometimes a single shift makes 0 the maximum in every column at once.
# Finding it is a small dynamic program over the sets of most frequent
# elements.

# %%
for s in ("00a/00b/0", "aab/bba/gg0", "aa0/00b/00g"):
    print(s, exists_all_zero_max_shift(Point.from_presentation(s)))
