import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kimura3.decompose import decompose, find_good_vertex
from kimura3.group import AUTOMORPHISMS
from kimura3.io import (
    decomposition_to_json,
    good_vertex_to_json,
    op_from_json,
    op_to_json,
    parse_point,
    point_from_json,
    point_to_json,
)
from kimura3.polytope import Flow, Point, vertex_of
from kimura3.symmetry import SymmetryOp, apply


def test_point_round_trip():
    x = Point.from_presentation("aab/0bg/ggg")
    data = point_to_json(x)
    assert data == {"n": 3, "k": 3, "columns": [[0, 2, 1, 0], [1, 0, 1, 1], [0, 0, 0, 3]]}
    assert point_from_json(json.loads(json.dumps(data))) == x


def test_point_from_json_validation():
    with pytest.raises(ValueError):
        point_from_json({"n": 2, "columns": [[1, 0, 0, 0]]})
    with pytest.raises(ValueError):
        point_from_json({"k": 2, "columns": [[1, 0, 0, 0]]})


def test_parse_point_sources(tmp_path):
    x = Point.from_presentation("ab/ab")
    f = tmp_path / "x.json"
    f.write_text(json.dumps(point_to_json(x)))
    assert parse_point("ab/ab") == x
    assert parse_point(json.dumps(point_to_json(x))) == x
    assert parse_point(str(f)) == x


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.data())
def test_op_round_trip(n, data):
    sigma = tuple(data.draw(st.permutations(range(n))))
    head = data.draw(st.lists(st.integers(0, 3), min_size=n - 1, max_size=n - 1))
    h = Flow((*head, int(np.bitwise_xor.reduce(head)) if head else 0))
    op = SymmetryOp(sigma, h, data.draw(st.sampled_from(AUTOMORPHISMS)))
    assert op_from_json(json.loads(json.dumps(op_to_json(op)))) == op


def test_decomposition_json():
    x = Point.from_presentation("0aa/0aa")
    d = decompose(x, 3)
    out = decomposition_to_json(d)
    assert out["k"] == 3 and len(out["flows"]) == 3
    total = vertex_of(Flow.parse(out["flows"][0]))
    for s in out["flows"][1:]:
        total = total + vertex_of(Flow.parse(s))
    assert total == x
    assert all({"branch", "k", "n", "op"} <= set(step) for step in out["trace"])
    assert "trace" not in decomposition_to_json(d, trace=False)


def test_good_vertex_json():
    r = find_good_vertex(Point.from_presentation("0aa/0aa"), 3)
    out = good_vertex_to_json(r)
    assert out["branch"] == r.branch.value
    assert apply(op_from_json(out["op"]).inverse(), vertex_of(Flow.parse(out["vertex"]))) == vertex_of(
        Flow.parse(out["original_vertex"]))
