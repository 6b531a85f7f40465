"""JSON encodings of points, flows, symmetry ops, decompositions and reports.

Point::

    {"n": 2, "k": 2, "columns": [[x0, xa, xb, xg], [x0, xa, xb, xg]]}

Flows are strings over {0, a, b, g}.  A symmetry op is
``{"sigma": [...], "h": "0aa", "phi": "bag"}`` where ``sigma`` is a 1-based
one-line permutation (column j goes to position sigma[j-1]) and ``phi``
lists the images of alpha, beta, gamma.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .decompose import Decomposition, GoodVertexResult, TraceStep
from .group import GroupAut
from .oracle import EnumerationReport
from .polytope import FacetId, Flow, Point
from .symmetry import CanonicalForm, SymmetryOp


def point_to_json(x: Point) -> dict[str, Any]:
    sums = set(x.column_sums())
    return {
        "n": x.n,
        "k": sums.pop() if len(sums) == 1 else None,
        "columns": [list(c) for c in x.columns],
    }


def point_from_json(data: dict[str, Any]) -> Point:
    cols = data["columns"]
    if "n" in data and data["n"] != len(cols):
        raise ValueError(f"point declares n={data['n']} but has {len(cols)} columns")
    x = Point(tuple(tuple(c) for c in cols))
    k = data.get("k")
    if k is not None and any(s != k for s in x.column_sums()):
        raise ValueError(f"column sums {x.column_sums()} do not all equal k={k}")
    return x


def parse_point(spec: str) -> Point:
    """Read a point from a JSON file, a JSON literal or a G-presentation string."""
    text = spec.strip()
    if text.startswith("{"):
        return point_from_json(json.loads(text))
    path = Path(spec)
    if path.suffix == ".json" or path.is_file():
        return point_from_json(json.loads(path.read_text()))
    return Point.from_presentation(text)


def op_to_json(op: SymmetryOp) -> dict[str, Any]:
    return {"sigma": [s + 1 for s in op.sigma], "h": str(op.h), "phi": op.phi.name}


def op_from_json(data: dict[str, Any]) -> SymmetryOp:
    return SymmetryOp(
        tuple(s - 1 for s in data["sigma"]),
        Flow.parse(data["h"]),
        GroupAut.from_name(data["phi"]),
    )


def facet_to_json(f: FacetId) -> dict[str, Any]:
    return {"g": f.g.symbol, "A": sorted(f.A.members)}


def canonical_to_json(c: CanonicalForm) -> dict[str, Any]:
    return {"point": point_to_json(c.point), "op": op_to_json(c.op)}


def good_vertex_to_json(r: GoodVertexResult) -> dict[str, Any]:
    return {
        "branch": r.branch.value,
        "vertex": str(r.vertex),
        "original_vertex": str(r.original_vertex),
        "op": op_to_json(r.op),
    }


def step_to_json(s: TraceStep) -> dict[str, Any]:
    out = {"branch": s.branch.value, "k": s.k, "n": s.op.n, "op": op_to_json(s.op)}
    if s.vertex is not None:
        out["vertex"] = str(s.vertex)
    return out


def decomposition_to_json(d: Decomposition, trace: bool = True) -> dict[str, Any]:
    out: dict[str, Any] = {"k": d.k, "flows": [str(f) for f in d.vertices]}
    if trace:
        out["trace"] = [step_to_json(s) for s in d.trace]
    return out


def report_to_json(r: EnumerationReport) -> dict[str, Any]:
    return {
        "n": r.n,
        "k": r.k,
        "lattice_points": r.lattice_member_count,
        "vertex_sums": r.sum_reachable_count,
        "decomposed": r.decomposed_count,
        "witnesses": [point_to_json(w) for w in r.witnesses],
    }
