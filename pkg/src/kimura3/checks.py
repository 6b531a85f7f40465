"""Property checks over sampled and enumerated points.

Each ``check_*`` function returns a :class:`CheckResult`; none of them
raise on a failed property.  The default sizes are the ones the acceptance
suite uses; ``selfcheck`` in the CLI runs them with smaller budgets.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import ceil
from typing import Callable, Iterable

import numpy as np

from .decompose import _single_facet_value, _thirds_columns, decompose
from .errors import ProofViolation
from .group import NONZERO
from .oracle import (
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
    _odd_masks,
    distinguished_flows,
    enumerate_vertices,
    facet_values,
    is_member,
    vertex_of,
)
from .symmetry import (
    apply,
    apply_to_flow,
    canonicalize,
    exists_all_zero_max_shift,
    generators,
)

MAX_REPORTED_FAILURES = 20


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.failures and self.checked > 0

    def fail(self, msg: str) -> None:
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(msg)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f"; {self.notes}" if self.notes else ""
        first = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"[{status}] {self.name}: {self.checked} checked in {self.seconds:.1f}s{extra}{first}"


def _timed(fn: Callable[..., CheckResult]) -> Callable[..., CheckResult]:
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# sampling


def random_flow(n: int, rng: np.random.Generator) -> Flow:
    head = rng.integers(0, 4, size=n - 1)
    last = int(np.bitwise_xor.reduce(head)) if n > 1 else 0
    return Flow((*map(int, head), last))


def random_vertex_sum(n: int, k: int, rng: np.random.Generator) -> Point:
    """A point of kP_n ∩ L_n built as the sum of k uniformly random flows."""
    head = rng.integers(0, 4, size=(k, n - 1))
    last = np.bitwise_xor.reduce(head, axis=1) if n > 1 else np.zeros(k, dtype=np.int64)
    entries = np.concatenate([head, last[:, None]], axis=1)
    cols = np.zeros((n, 4), dtype=np.int64)
    for g in range(4):
        cols[:, g] = (entries == g).sum(axis=0)
    return Point.from_array(cols)


def random_column_point(n: int, k: int, rng: np.random.Generator) -> Point:
    """Each column an independent random composition of k into 4 parts."""
    cols = []
    for _ in range(n):
        cuts = np.sort(rng.integers(0, k + 1, size=3))
        cols.append((cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], k - cuts[2]))
    return Point(tuple(cols))


# ---------------------------------------------------------------------------
# checks


@_timed
def check_parity(samples: int = 10_000, max_n: int = 8, max_k: int = 10, seed: int = 0) -> CheckResult:
    """Every facet form of a lattice point with column sum k is congruent to k mod 2."""
    res = CheckResult("parity: S_g(x,A) = k mod 2")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        n = int(rng.integers(1, max_n + 1))
        k = int(rng.integers(1, max_k + 1))
        x = random_vertex_sum(n, k, rng)
        vals = facet_values(x.as_array()[None])[0]
        res.checked += vals.size
        bad = np.argwhere((vals - k) % 2 != 0)
        for a, g in bad[:1]:
            res.fail(f"{x} k={k}: S_{NONZERO[g].symbol}{OddSubset.from_mask(n, int(_odd_masks(n)[a]))} = {vals[a, g]}")
    return res


def drop_is_minus_one(n: int, v: Flow, A: OddSubset, g: int) -> bool:
    """When S_g drops by exactly 1 on subtracting v in V_n, for |A| = 1.

    Direct transcription of the three cases: v = v(0); v = v(g)_{j,n};
    v = v(g')_{j,n} with g' != g and A = {j} or A = {n}.
    """
    if not any(v.entries):
        return True
    j = next(i for i, e in enumerate(v.entries, start=1) if e)
    gp = v.entries[j - 1]
    if gp == g:
        return True
    return A.members in ({j}, {n})


@_timed
def check_drop_rule(samples: int = 1_000, max_n: int = 5, max_k: int = 5, seed: int = 0) -> CheckResult:
    """S_g(x - v, A) - S_g(x, A) is -1 or -3 for v in V_n and small A."""
    res = CheckResult("drop rule for v in V_n, |A|=1 or |A|=3 with n in A")
    rng = np.random.default_rng(seed)
    for n in range(1, max_n + 1):
        masks = _odd_masks(n)
        last_bit = 1 << (n - 1)
        rows = [
            a for a, m in enumerate(masks)
            if bin(int(m)).count("1") == 1 or (bin(int(m)).count("1") == 3 and m & last_bit)
        ]
        V = distinguished_flows(n)
        Varr = np.array([vertex_of(v).columns for v in V], dtype=np.int64)
        for _ in range(samples):
            k = int(rng.integers(1, max_k + 1))
            x = random_vertex_sum(n, k, rng)
            xa = x.as_array()
            before = facet_values(xa[None])[0]
            after = facet_values(xa[None] - Varr)  # x - v may leave the orthant; S is linear
            for vi, v in enumerate(V):
                for a in rows:
                    A = OddSubset.from_mask(n, int(masks[a]))
                    for gi, g in enumerate(NONZERO):
                        d = int(after[vi, a, gi] - before[a, gi])
                        res.checked += 1
                        if d not in (-1, -3):
                            res.fail(f"{x} v={v} A={A} g={g.symbol}: drop {d}")
                        elif len(A) == 1 and (d == -1) != drop_is_minus_one(n, v, A, g):
                            res.fail(f"{x} v={v} A={A} g={g.symbol}: drop {d} contradicts the case list")
    return res


@_timed
def check_column_bound(max_n: int = 4, max_k: int = 4) -> CheckResult:
    """x_0^j + x_g^j >= ceil(k/3) on columns whose maximum is at 0, with the equality case."""
    # The equality case belongs to the unrounded bound 3(x_0 + x_g) >= k.  It
    # agrees with ceil(k/3) when 3 | k; otherwise the rounded bound can be
    # tight (k=1, column {0}) while x_h = k/3 is impossible.
    res = CheckResult("column bound x_0 + x_g >= ceil(k/3)")
    equalities = rounded_only = 0
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            for x in enumerate_dilation_lattice_points(n, k):
                y = canonicalize(x, k).point
                for j, c in enumerate(y.columns):
                    if c[0] != max(c):
                        continue
                    for g in NONZERO:
                        res.checked += 1
                        lhs = c[0] + c[g]
                        if lhs < ceil(k / 3):
                            res.fail(f"{y} column {j + 1}, g={g.symbol}: {lhs} < ceil({k}/3)")
                        thirds = c[g] == 0 and all(3 * c[h] == k for h in range(4) if h != g)
                        tight = 3 * lhs == k
                        equalities += tight
                        rounded_only += lhs == ceil(k / 3) and not tight
                        if tight != thirds:
                            res.fail(f"{y} column {j + 1}, g={g.symbol}: equality case mismatch")
    res.notes = f"{equalities} equality instances, {rounded_only} ties of the rounded bound with 3 ∤ k"
    return res


def in_full_normal_form(y: Point, k: int) -> bool:
    """On a sorted, zero-mode point: no coordinate reaches k, at most two
    {k/3,k/3,k/3,0} columns, and no shift makes 0 the mode everywhere."""
    if any(max(c) >= k for c in y.columns):
        return False
    if len(_thirds_columns(y, k)) > 2:
        return False
    return exists_all_zero_max_shift(y) is None


@_timed
def check_normal_form_off_facets(n: int = 4, ks: Iterable[int] = (3, 4)) -> CheckResult:
    """Normal-form points avoid every facet kF_g(A) with |A| = 3 and n in A."""
    res = CheckResult(f"no tight |A|=3 facet through column n (n={n})")
    qualifying = 0
    for k in ks:
        for x in enumerate_dilation_lattice_points(n, k):
            y = canonicalize(x, k).point
            if not in_full_normal_form(y, k):
                continue
            qualifying += 1
            vals = facet_values(y.as_array()[None])[0]
            for a, m in enumerate(_odd_masks(n)):
                m = int(m)
                if bin(m).count("1") != 3 or not m >> (n - 1) & 1:
                    continue
                for gi, g in enumerate(NONZERO):
                    res.checked += 1
                    if vals[a, gi] <= k:
                        res.fail(f"{y} k={k}: S_{g.symbol}{OddSubset.from_mask(n, m)} = {vals[a, gi]}")
    res.notes = f"{qualifying} normal-form points"
    return res


@_timed
def check_single_tight_column_facet(n: int = 4, ks: Iterable[int] = (3, 4)) -> CheckResult:
    """Normal-form points with x_0^n = 0 are tight on at most one kF_g({j}), j < n."""
    res = CheckResult(f"at most one tight single-column facet (n={n})")
    for k in ks:
        for x in enumerate_dilation_lattice_points(n, k):
            y = canonicalize(x, k).point
            if y.columns[-1][0] or any(max(c) >= k for c in y.columns) or len(_thirds_columns(y, k)) > 2:
                continue
            tight = [(g, j) for j in range(n - 1) for g in NONZERO if _single_facet_value(y, j, g, k) == k]
            res.checked += 1
            if len(tight) > 1:
                res.fail(f"{y} k={k}: tight on {tight}")
    return res


@_timed
def check_symmetry(max_n: int = 4, samples: int = 1_000, max_k: int = 5, seed: int = 0) -> CheckResult:
    """Generators permute the vertices and preserve membership in kP_n."""
    res = CheckResult("symmetry generators preserve vertices and membership")
    rng = np.random.default_rng(seed)
    members = 0
    for n in range(1, max_n + 1):
        gens = generators(n)
        verts = set(enumerate_vertices(n))
        for op in gens:
            res.checked += 1
            if {apply_to_flow(op, f) for f in verts} != verts:
                res.fail(f"n={n}: {op} does not permute the vertices")
            if {apply(op, vertex_of(f)) for f in verts} != {vertex_of(f) for f in verts}:
                res.fail(f"n={n}: {op} does not permute the vertex points")
        for i in range(samples):
            k = int(rng.integers(1, max_k + 1))
            x = random_vertex_sum(n, k, rng) if i % 2 else random_column_point(n, k, rng)
            m = bool(is_member(x, k))
            members += m
            for op in gens:
                res.checked += 1
                if bool(is_member(apply(op, x), k)) != m:
                    res.fail(f"n={n} k={k}: {op} changes membership of {x}")
    res.notes = f"{members} of {max_n * samples} sampled points were members"
    return res


@_timed
def check_stress(samples: int = 10_000, max_n: int = 10, max_k: int = 20, seed: int = 0) -> CheckResult:
    """Decompose random sums of k flows and re-add the pieces."""
    res = CheckResult("stress decomposition")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        n = int(rng.integers(1, max_n + 1))
        k = int(rng.integers(1, max_k + 1))
        x = random_vertex_sum(n, k, rng)
        res.checked += 1
        try:
            d = decompose(x, k)
        except ProofViolation as exc:
            res.fail(f"{x} k={k}: {exc}")
            continue
        if len(d.vertices) != k or d.total() != x:
            res.fail(f"{x} k={k}: pieces do not sum back")
    return res


@_timed
def check_oracle_equivalence(pairs: Iterable[tuple[int, int]] = ((2, 2), (2, 3), (3, 2), (3, 3))) -> CheckResult:
    """The facet-filtered lattice points equal the sums of k vertices."""
    res = CheckResult("lattice points == vertex sums")
    sizes = []
    for n, k in pairs:
        lat = set(enumerate_dilation_lattice_points(n, k))
        sums = enumerate_vertex_sums(n, k)
        res.checked += 1
        sizes.append(f"({n},{k}):{len(lat)}")
        if lat != sums:
            res.fail(f"n={n} k={k}: {len(lat - sums)} lattice-only, {len(sums - lat)} sum-only")
    res.notes = " ".join(sizes)
    return res


@_timed
def check_normality(ns: Iterable[int] = (1, 2, 3, 4), ks: Iterable[int] = (2, 3, 4)) -> CheckResult:
    """verify_normality on a grid, decomposing every lattice point."""
    res = CheckResult("normality by enumeration")
    ks = tuple(ks)
    for n in ns:
        for k in ks:
            try:
                rep = verify_normality(n, k)
            except ProofViolation as exc:
                res.fail(f"n={n} k={k}: {exc}")
                continue
            res.checked += rep.decomposed_count
            if rep.witnesses:
                res.fail(f"n={n} k={k}: {len(rep.witnesses)} witnesses, e.g. {rep.witnesses[0]}")
            if rep.decomposed_count != rep.lattice_member_count:
                res.fail(f"n={n} k={k}: decomposed {rep.decomposed_count} of {rep.lattice_member_count}")
    return res


@_timed
def check_negative_control() -> CheckResult:
    """({a,a},{b,b}) is a lattice point outside 2P_2."""
    res = CheckResult("negative control aa/bb")
    x = Point.from_presentation("aa/bb")
    m = is_member(x, 2)
    res.checked = 2
    if m or m.violated != FacetId(2, OddSubset.of(2, 1)):
        res.fail(f"is_member returned {m}")
    if exhaustive_decompose(x, 2) is not None:
        res.fail("exhaustive search decomposed it")
    return res

