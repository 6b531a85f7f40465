"""Brute-force ground truth for normality at small scale.

Both sides of the normality equation are computed here without going
through the main decomposition path:

* lattice points of kP_n come from every column composition of k, filtered by
  the group-sum condition and by facet inequalities evaluated directly from
  their definition (explicit subset loops, no shared helpers);
* sums of k vertices come from iterated Minkowski addition of the flow
  vertices with deduplication, and never look at the inequalities.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb

import numpy as np

from .errors import BudgetExceeded, ProofViolation
from .group import G
from .polytope import Flow, Point

DEFAULT_BUDGET = 10**7
DEFAULT_SEARCH_BUDGET = 10**6


def compositions(k: int) -> list[tuple[int, int, int, int]]:
    """All ways to write k as an ordered sum of 4 nonnegative parts, colex order."""
    comps = [
        (a, b, c, k - a - b - c)
        for a in range(k + 1)
        for b in range(k + 1 - a)
        for c in range(k + 1 - a - b)
    ]
    return sorted(comps, key=lambda t: t[::-1])


def _flow_tuples(n: int) -> list[tuple[int, ...]]:
    out = []
    for entries in product(range(4), repeat=n):
        acc = 0
        for g in entries:
            acc ^= g
        if acc == 0:
            out.append(entries)
    return out


def _one_hot(flows: list[tuple[int, ...]], n: int) -> np.ndarray:
    arr = np.zeros((len(flows), n, 4), dtype=np.int64)
    for i, f in enumerate(flows):
        for j, g in enumerate(f):
            arr[i, j, g] = 1
    return arr


def _satisfies_facets(arr: np.ndarray, k: int) -> np.ndarray:
    """Boolean mask of points (N, n, 4) obeying every odd-subset inequality at level k."""
    n = arr.shape[1]
    ok = np.ones(arr.shape[0], dtype=bool)
    for g in (1, 2, 3):
        others = [h for h in (1, 2, 3) if h != g]
        inside = arr[:, :, 0] + arr[:, :, g]
        outside = arr[:, :, others[0]] + arr[:, :, others[1]]
        for size in range(1, n + 1, 2):
            for A in combinations(range(n), size):
                in_A = np.zeros(n, dtype=bool)
                in_A[list(A)] = True
                s = inside[:, in_A].sum(axis=1) + outside[:, ~in_A].sum(axis=1)
                ok &= s >= k
    return ok


def lattice_point_array(n: int, k: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Array of shape (N, n, 4) holding kP_n ∩ L_n."""
    comps = compositions(k)
    m = len(comps)
    if m**n > budget:
        raise BudgetExceeded(f"{m}^{n} candidate points exceed budget {budget}")
    comp_arr = np.array(comps, dtype=np.int64)
    comp_sum = np.array(
        [(c[1] & 1) * int(G.ALPHA) ^ (c[2] & 1) * int(G.BETA) ^ (c[3] & 1) * int(G.GAMMA) for c in comps],
        dtype=np.int64,
    )
    idx = np.indices((m,) * n).reshape(n, -1).T
    keep = np.bitwise_xor.reduce(comp_sum[idx], axis=1) == 0
    idx = idx[keep]
    chunks = []
    for start in range(0, len(idx), 200_000):
        arr = comp_arr[idx[start:start + 200_000]]
        chunks.append(arr[_satisfies_facets(arr, k)])
    return np.concatenate(chunks) if chunks else np.zeros((0, n, 4), dtype=np.int64)


def enumerate_dilation_lattice_points(n: int, k: int, budget: int = DEFAULT_BUDGET) -> list[Point]:
    return [Point.from_array(a) for a in lattice_point_array(n, k, budget)]


def vertex_sum_array(n: int, k: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """Array of shape (N, n, 4) of all distinct sums of k flow vertices."""
    flows = _one_hot(_flow_tuples(n), n)
    nf = len(flows)
    if comb(nf + k - 1, k) > budget:
        raise BudgetExceeded(f"C({nf}+{k}-1, {k}) multisets of flows exceed budget {budget}")
    dim = 4 * n
    flat = flows.reshape(nf, dim)
    base = k + 1
    if base**dim < 2**62:
        # digits never carry because every coordinate stays <= k
        weights = base ** np.arange(dim, dtype=np.int64)
        fcodes = flat @ weights
        codes = np.zeros(1, dtype=np.int64)
        for _ in range(k):
            codes = np.unique((codes[:, None] + fcodes[None, :]).ravel())
        digits = (codes[:, None] // weights) % base
        return digits.reshape(-1, n, 4)
    sums = np.zeros((1, dim), dtype=np.int64)
    for _ in range(k):
        sums = np.unique((sums[:, None, :] + flat[None, :, :]).reshape(-1, dim), axis=0)
    return sums.reshape(-1, n, 4)


def enumerate_vertex_sums(n: int, k: int, budget: int = DEFAULT_BUDGET) -> set[Point]:
    return {Point.from_array(a) for a in vertex_sum_array(n, k, budget)}


class _Search:
    """Depth-first decomposition search memoised on the remaining point."""

    def __init__(self, n: int, budget: int):
        self.n = n
        self.budget = budget
        self.nodes = 0
        self.memo: dict[tuple, tuple[Flow, ...] | None] = {}

    def good_flows(self, cols):
        supports = [[g for g in range(4) if c[g] > 0] for c in cols[:-1]]
        for head in product(*supports):
            last = 0
            for g in head:
                last ^= g
            if cols[-1][last] > 0:
                yield (*head, last)

    def run(self, cols: tuple, k: int) -> tuple[Flow, ...] | None:
        if k == 0:
            return ()
        if cols in self.memo:
            return self.memo[cols]
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"exhaustive search visited more than {self.budget} nodes")
        found = None
        for f in self.good_flows(cols):
            rest = tuple(
                tuple(c[g] - (g == e) for g in range(4)) for c, e in zip(cols, f)
            )
            sub = self.run(rest, k - 1)
            if sub is not None:
                found = (Flow(f), *sub)
                break
        self.memo[cols] = found
        return found


def exhaustive_decompose(x: Point, k: int, budget: int = DEFAULT_SEARCH_BUDGET) -> list[Flow] | None:
    """Some list of k flows whose vertices sum to x, or None if there is none."""
    if any(sum(c) != k for c in x.columns):
        return None
    found = _Search(x.n, budget).run(x.columns, k)
    return None if found is None else list(found)


@dataclass
class EnumerationReport:
    n: int
    k: int
    lattice_member_count: int
    sum_reachable_count: int
    witnesses: list[Point] = field(default_factory=list)
    decomposed_count: int = 0

    @property
    def normal(self) -> bool:
        return not self.witnesses


def verify_normality(n: int, k: int, budget: int = DEFAULT_BUDGET, decompose_all: bool = True) -> EnumerationReport:
    """Compare kP_n ∩ L_n with the sums of k vertices, and run the main
    decomposition on every lattice point."""
    from .decompose import decompose

    lattice = {Point.from_array(a) for a in lattice_point_array(n, k, budget)}
    sums = {Point.from_array(a) for a in vertex_sum_array(n, k, budget)}
    stray = sums - lattice
    if stray:
        raise ProofViolation(
            f"{len(stray)} vertex sums violate the facet description, e.g. {min(stray, key=str)}"
        )
    witnesses = sorted(lattice - sums, key=lambda p: p.columns)
    report = EnumerationReport(n, k, len(lattice), len(sums), witnesses)
    if decompose_all:
        for x in sorted(lattice, key=lambda p: p.columns):
            decompose(x, k)
            report.decomposed_count += 1
    return report
