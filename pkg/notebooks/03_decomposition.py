# %% [markdown]
# # Peeling vertices off a lattice point
#
# `decompose` writes a point of kP_n in the lattice as a sum of k vertices
# by removing one vertex at a time while staying inside the polytope.
# The trace records which case produced each vertex.

# %%
from collections import Counter

import numpy as np

from kimura3 import Flow, decompose, find_good_vertex, vertex_of
from kimura3.checks import random_vertex_sum
from kimura3.oracle import enumerate_dilation_lattice_points
from kimura3.polytope import Point

x = Point.from_presentation("0aa/0aa")
d = decompose(x, 3)
print([str(f) for f in d.vertices])
for step in d.trace:
    print(step.branch.value, step.k, step.vertex)

# %% [markdown]
# A single step returns the vertex in the normalized frame together with
# the symmetry that produced the frame.

# %%
pieces = ["0abg", "ab0g", "bb00", "g0g0"]
y = vertex_of(Flow.parse(pieces[0]))
for f in pieces[1:]:
    y = y + vertex_of(Flow.parse(f))
print(y.presentation())
r = find_good_vertex(y, 4)
print(r.branch.value, r.vertex, r.original_vertex)

# %% [markdown]
# Which cases fire across all of 3P_4?

# %%
branches = Counter()
for p in enumerate_dilation_lattice_points(4, 3):
    branches.update(s.branch.value for s in decompose(p, 3).trace)
for name, count in branches.most_common():
    print(f"{name:18s} {count}")

# %% [markdown]
# Larger random instances decompose quickly.

# %%
rng = np.random.default_rng(1)
x = random_vertex_sum(10, 20, rng)
d = decompose(x, 20)
print(d.total() == x, len(d.vertices))
