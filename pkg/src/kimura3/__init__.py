"""Exact lattice-point tools for the Kimura 3-parameter polytopes P_n.

The polytope P_n lives in R^{4n}; its vertices are the group-based flows of
length n over the Klein four-group.  This package provides membership via
the facet inequalities, the symmetry actions, a constructive decomposition
of every lattice point of kP_n into k vertices, and a brute-force oracle.
"""
from .decompose import (
    Branch,
    Decomposition,
    GoodVertexResult,
    decompose,
    decompose_k2,
    find_good_vertex,
    reduce_saturated_column,
)
from .errors import BudgetExceeded, KimuraError, PreconditionError, ProofViolation
from .group import AUTOMORPHISMS, ELEMENTS, NONZERO, PARITY_CHARS, G, GroupAut, ParityChar, add, apply_aut, char_value
from .oracle import (
    EnumerationReport,
    enumerate_dilation_lattice_points,
    enumerate_vertex_sums,
    exhaustive_decompose,
    verify_normality,
)
from .polytope import (
    FacetId,
    Flow,
    OddSubset,
    Point,
    distinguished_flows,
    enumerate_vertices,
    eval_S,
    facets,
    in_lattice,
    is_member,
    lies_on_dilated_facet,
    pair_flow,
    parity_check,
    vertex_of,
)
from .symmetry import (
    CanonicalForm,
    SymmetryOp,
    apply,
    apply_to_flow,
    canonicalize,
    exists_all_zero_max_shift,
    multiset_compare,
)

__version__ = "0.1.0"
