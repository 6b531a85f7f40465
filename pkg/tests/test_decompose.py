import itertools
from collections import Counter

import numpy as np
import pytest

from kimura3.checks import random_vertex_sum
from kimura3.decompose import (
    Branch,
    decompose,
    decompose_k2,
    find_good_vertex,
    reduce_saturated_column,
)
from kimura3.errors import PreconditionError
from kimura3.oracle import enumerate_dilation_lattice_points, exhaustive_decompose
from kimura3.polytope import Flow, Point, enumerate_vertices, in_lattice, is_member, pair_flow, vertex_of
from kimura3.symmetry import canonicalize, exists_all_zero_max_shift, multiset_key

P = Point.from_presentation


def sum_of(flows):
    x = vertex_of(flows[0])
    for f in flows[1:]:
        x = x + vertex_of(f)
    return x


def all_pairs(x):
    """Every unordered pair of flows summing to x, by brute force."""
    out = set()
    for f, h in itertools.combinations_with_replacement(enumerate_vertices(x.n), 2):
        if vertex_of(f) + vertex_of(h) == x:
            out.add(frozenset((f, h)))
    return out


def assert_prefix_descent(x, k, flows):
    """Removing the first i pieces leaves a point of (k-i)P_n."""
    rest = x
    for i, f in enumerate(flows[:-1], start=1):
        rest = rest - vertex_of(f)
        assert is_member(rest, k - i), (x, k, flows, i)


# k = 2 -----------------------------------------------------------------

def test_k2_double_zero():
    x = sum_of([Flow.zero(3)] * 2)
    assert decompose_k2(x) == (Flow.zero(3), Flow.zero(3))


def test_k2_unique_split():
    x = P("ab/ab")
    assert all_pairs(x) == {frozenset((Flow.parse("aa"), Flow.parse("bb")))}
    assert frozenset(decompose_k2(x)) == frozenset((Flow.parse("aa"), Flow.parse("bb")))


def test_k2_pair_vertices():
    x = vertex_of(pair_flow(3, 1, 1, 3)) + vertex_of(pair_flow(3, 2, 2, 3))
    expected = frozenset((Flow.parse("a0a"), Flow.parse("0bb")))
    assert all_pairs(x) == {expected}
    assert frozenset(decompose_k2(x)) == expected


@pytest.mark.parametrize("n", range(1, 5))
def test_k2_all_lattice_points(n):
    for x in enumerate_dilation_lattice_points(n, 2):
        f, h = decompose_k2(x)
        assert vertex_of(f) + vertex_of(h) == x


def test_k2_rejects_non_member():
    with pytest.raises(PreconditionError):
        decompose_k2(P("aa/bb"))


# saturated columns -------------------------------------------------------

def test_reduce_all_zero():
    k = 3
    x = sum_of([Flow.zero(4)] * k)
    red = reduce_saturated_column(x, k)
    assert red.point == sum_of([Flow.zero(3)] * k)
    d = decompose(x, k)
    assert d.vertices == [Flow.zero(4)] * k


def test_reduce_then_lift():
    x = P("ab/ab/00")
    red = reduce_saturated_column(x, 2)
    assert red.point == P("ab/ab")
    lifted = {red.lift(f) for f in decompose_k2(red.point)}
    assert lifted == {Flow.parse("aa0"), Flow.parse("bb0")}
    assert sum_of(list(lifted)) == x


def test_reduce_moves_saturated_element_to_zero():
    x = P("ggg/0ab/agb")
    assert in_lattice(x) == (True, 3) and is_member(x, 3)
    red = reduce_saturated_column(x, 3)
    assert red is not None and red.point.n == 2
    d = decompose(red.point, 3)
    assert sum_of([red.lift(f) for f in d.vertices]) == x


def test_reduce_none_when_unsaturated():
    x = vertex_of(Flow.zero(3)) + vertex_of(Flow.parse("aa0")) + vertex_of(Flow.parse("0bb"))
    assert reduce_saturated_column(x, 3) is None


# find_good_vertex ----------------------------------------------------------

def test_good_vertex_prop0_example():
    x = sum_of([Flow.zero(2), pair_flow(2, 1, 1, 2), pair_flow(2, 1, 1, 2)])  # 0aa/0aa
    res = find_good_vertex(x, 3)
    assert res.branch is Branch.PROP_0_COND5
    assert res.vertex == Flow.zero(2)
    assert is_member(x - vertex_of(res.original_vertex), 2)


def _unsaturated(x, k):
    return all(max(c) < k for c in x.columns)


def test_good_vertex_thirds_instance():
    # search sums of three flows at n=4 for three {1,1,1,0} columns
    found = None
    for fs in itertools.combinations_with_replacement(enumerate_vertices(4), 3):
        x = sum_of(list(fs))
        if sum(multiset_key(c) == (1, 1, 1, 0) for c in x.columns) >= 3 and _unsaturated(x, 3):
            found = x
            break
    assert found is not None
    res = find_good_vertex(found, 3)
    assert res.branch is Branch.LEMMA6_THIRDS
    assert is_member(found - vertex_of(res.original_vertex), 2)


def _branch_instances(n, k):
    by_branch = {}
    for x in enumerate_dilation_lattice_points(n, k):
        if not _unsaturated(x, k):
            continue
        res = find_good_vertex(x, k)
        by_branch.setdefault(res.branch, (x, res))
    return by_branch


@pytest.fixture(scope="module")
def n4k3_instances():
    return _branch_instances(4, 3)


def test_every_casework_branch_reached(n4k3_instances):
    assert set(n4k3_instances) == {
        Branch.LEMMA6_THIRDS, Branch.PROP_0_COND5, Branch.PROP_XN_POSITIVE, Branch.PROP_0NOF, Branch.PROP_0F,
    }


def test_prop_xn_positive_instance(n4k3_instances):
    x, res = n4k3_instances[Branch.PROP_XN_POSITIVE]
    y = canonicalize(x, 3).point
    assert y.columns[-1][0] > 0
    assert exists_all_zero_max_shift(y) is None
    assert res.vertex == Flow.zero(4)
    assert is_member(x - vertex_of(res.original_vertex), 2)


@pytest.mark.parametrize("branch", [Branch.PROP_0NOF, Branch.PROP_0F])
def test_zero_free_last_column_instances(n4k3_instances, branch):
    x, res = n4k3_instances[branch]
    assert canonicalize(x, 3).point.columns[-1][0] == 0
    v = res.vertex.entries
    assert v[-1] != 0 and sum(1 for g in v if g) == 2  # a v(g)_{j,n}
    assert is_member(x - vertex_of(res.original_vertex), 2)


def test_find_good_vertex_preconditions():
    with pytest.raises(PreconditionError):
        find_good_vertex(P("ab/ab"), 2)
    with pytest.raises(PreconditionError):
        find_good_vertex(sum_of([Flow.zero(3)] * 3), 3)  # saturated
    with pytest.raises(PreconditionError):
        find_good_vertex(P("aaa/bbb/ggg"), 3)


# full decomposition -----------------------------------------------------

def test_decompose_single_vertex():
    d = decompose(vertex_of(Flow.zero(3)), 1)
    assert d.vertices == [Flow.zero(3)]


def test_decompose_random_five_flows():
    rng = np.random.default_rng(11)
    x = random_vertex_sum(6, 5, rng)
    d = decompose(x, 5)
    assert len(d.vertices) == 5 and sum_of(d.vertices) == x
    assert_prefix_descent(x, 5, d.vertices)


@pytest.mark.parametrize("n, k", [(3, 3), (3, 4), (2, 5), (4, 3)])
def test_decompose_every_lattice_point(n, k):
    branches = Counter()
    for x in enumerate_dilation_lattice_points(n, k):
        d = decompose(x, k)
        assert len(d.vertices) == k and sum_of(d.vertices) == x
        assert_prefix_descent(x, k, d.vertices)
        branches.update(s.branch for s in d.trace)
    assert Branch.ORACLE_FALLBACK not in branches


def test_decompose_rejects_bad_input():
    with pytest.raises(PreconditionError):
        decompose(P("aa/bb"), 2)
    with pytest.raises(PreconditionError):
        decompose(P("a/b"), 1)
    with pytest.raises(PreconditionError):
        decompose(vertex_of(Flow.zero(2)), 0)


def test_n3_thirds_falls_back_to_search():
    # three {k/3,k/3,k/3,0} columns with no spare column to absorb the shift
    x = P("aabbgg/aabbgg/00aagg")
    assert is_member(x, 6)
    res = find_good_vertex(x, 6)
    assert res.branch is Branch.ORACLE_FALLBACK
    with pytest.raises(Exception):
        find_good_vertex(x, 6, fallback=False)
    d = decompose(x, 6)
    assert sum_of(d.vertices) == x


def test_large_random_instances():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(4, 12))
        k = int(rng.integers(3, 25))
        x = random_vertex_sum(n, k, rng)
        d = decompose(x, k, fallback=False)
        assert sum_of(d.vertices) == x


# cross-validation against exhaustive search --------------------------------

def _lattice_candidates(n, k):
    from kimura3.oracle import compositions

    for cols in itertools.product(compositions(k), repeat=n):
        x = Point(cols)
        if in_lattice(x)[0]:
            yield x


@pytest.mark.parametrize("n, k", [(n, k) for n in (1, 2, 3) for k in (1, 2, 3, 4)] + [(4, 1), (4, 2)])
def test_decompose_agrees_with_exhaustive(n, k):
    for x in _lattice_candidates(n, k):
        brute = exhaustive_decompose(x, k)
        if is_member(x, k):
            d = decompose(x, k)
            assert brute is not None and sum_of(brute) == x
            assert sum_of(d.vertices) == x
        else:
            assert brute is None
            with pytest.raises(PreconditionError):
                decompose(x, k)


@pytest.mark.parametrize("k", [3, 4])
def test_decompose_agrees_with_exhaustive_n4_sampled(k):
    rng = np.random.default_rng(k)
    cands = list(_lattice_candidates(4, k)) if k == 3 else None
    for i in range(1500):
        if cands is not None:
            x = cands[int(rng.integers(len(cands)))]
        else:
            x = Point(tuple(tuple(rng.multinomial(k, [0.25] * 4)) for _ in range(4)))
            if not in_lattice(x)[0]:
                continue
        brute = exhaustive_decompose(x, k)
        assert (brute is not None) == bool(is_member(x, k))
        if brute is not None:
            assert sum_of(decompose(x, k).vertices) == x
