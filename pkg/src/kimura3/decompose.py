"""Peel a lattice point of kP_n into k vertices.

Every step works in a normalised frame: the point is moved by a
:class:`~kimura3.symmetry.SymmetryOp`, a vertex is chosen there, and the
vertex is mapped back with the inverse op.  The remainder is always
re-checked against the full facet system; a failed check raises
:class:`~kimura3.errors.ProofViolation` instead of returning a bad answer.

Case order for k >= 3 (after the saturated-column reduction):

1. three or more columns equal to {k/3, k/3, k/3, 0}  -> LEMMA6_THIRDS
2. some shift in H_n makes 0 a mode of every column   -> PROP_0_COND5
3. x_0^n > 0                                          -> PROP_XN_POSITIVE
4. x_0^n = 0, no tight single-column facet off n      -> PROP_0NOF
5. x_0^n = 0, one tight single-column facet           -> PROP_0F
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum

from .errors import PreconditionError, ProofViolation
from .group import NONZERO, GroupAut
from .polytope import Flow, Point, in_lattice, is_member, pair_flow, vertex_of
from .symmetry import (
    SymmetryOp,
    apply,
    apply_to_flow,
    canonicalize,
    exists_all_zero_max_shift,
    multiset_key,
)

log = logging.getLogger(__name__)

#: Below this column count the case analysis is not claimed to apply and
#: find_good_vertex may fall back to exhaustive search.
MIN_CASEWORK_N = 4


class Branch(str, Enum):
    BASE_VERTEX = "BASE_VERTEX"
    LEMMA3_PROJECTION = "LEMMA3_PROJECTION"
    LEMMA4_K2 = "LEMMA4_K2"
    LEMMA6_THIRDS = "LEMMA6_THIRDS"
    PROP_0_COND5 = "PROP_0_COND5"
    PROP_XN_POSITIVE = "PROP_XN_POSITIVE"
    PROP_0NOF = "PROP_0NOF"
    PROP_0F = "PROP_0F"
    ORACLE_FALLBACK = "ORACLE_FALLBACK"


@dataclass(frozen=True)
class GoodVertexResult:
    """A vertex chosen in the frame ``apply(op, x)``."""

    vertex: Flow
    branch: Branch
    op: SymmetryOp

    @property
    def original_vertex(self) -> Flow:
        """The same vertex expressed in the frame of the input point."""
        return apply_to_flow(self.op.inverse(), self.vertex)


@dataclass(frozen=True)
class TraceStep:
    branch: Branch
    op: SymmetryOp
    k: int
    vertex: Flow | None = None


@dataclass
class Decomposition:
    k: int
    vertices: list[Flow]
    trace: list[TraceStep] = field(default_factory=list)

    def total(self) -> Point:
        acc = vertex_of(self.vertices[0])
        for v in self.vertices[1:]:
            acc = acc + vertex_of(v)
        return acc


def _require_lattice(x: Point, k: int) -> None:
    ok, colsum = in_lattice(x)
    if not ok or colsum != k:
        raise PreconditionError(f"{x} is not a lattice point with column sum {k}")


def _require_member(x: Point, k: int) -> None:
    _require_lattice(x, k)
    m = is_member(x, k)
    if not m:
        raise PreconditionError(f"{x} is not in {k}P_{x.n}: {m.violated or ''} {m.reason}")


def _as_flow(x: Point) -> Flow:
    """Read a point with all column sums 1 as a flow."""
    entries = []
    for c in x.columns:
        if sum(c) != 1:
            raise ProofViolation(f"{x} was expected to be a vertex")
        entries.append(c.index(1))
    try:
        return Flow(tuple(entries))
    except ValueError as exc:
        raise ProofViolation(f"{x} was expected to be a vertex: {exc}") from None


# ---------------------------------------------------------------------------
# saturated columns


@dataclass(frozen=True)
class ReducedColumn:
    """x with a saturated coordinate, moved to x_0^n = k and projected away."""

    point: Point
    op: SymmetryOp

    def lift(self, flow: Flow) -> Flow:
        return apply_to_flow(self.op.inverse(), Flow((*flow.entries, 0)))


def _saturated(x: Point, k: int) -> tuple[int, int] | None:
    for j, c in enumerate(x.columns):
        for g in range(4):
            if c[g] == k:
                return j, g
    return None


def _reduce(x: Point, k: int) -> ReducedColumn | None:
    hit = _saturated(x, k)
    if hit is None:
        return None
    j, g = hit
    n = x.n
    h = [0] * n
    h[0] ^= g
    h[n - 1] ^= g
    op = SymmetryOp.transposition(n, j, n - 1).then(SymmetryOp.shift(h))
    y = apply(op, x)
    if y.columns[-1] != (k, 0, 0, 0):
        raise ProofViolation(f"reduction of {x} did not saturate x_0^n")
    return ReducedColumn(Point(y.columns[:-1]), op)


def reduce_saturated_column(x: Point, k: int) -> ReducedColumn | None:
    """Drop a column in which some coordinate equals k.

    Returns None when every coordinate is below k.  Decompositions of the
    smaller point lift back through :meth:`ReducedColumn.lift`.
    """
    if x.n < 2:
        raise PreconditionError("need at least two columns to project")
    _require_member(x, k)
    return _reduce(x, k)


# ---------------------------------------------------------------------------
# k = 2


def _k2_step(x: Point) -> tuple[GoodVertexResult, Flow]:
    """Both halves of a point of 2P_n without saturated coordinates.

    Returns the first vertex (with its frame) and the remainder, already in
    the frame of ``x``.
    """
    n = x.n
    canon = canonicalize(x, 2)
    y, op = canon.point, canon.op
    last = y.columns[-1]
    if last[0] > 0:
        chosen = Flow.zero(n)
        z = y
    else:
        a, b = (g for g in NONZERO if last[g] > 0)
        c = a ^ b  # the third nonzero element
        images = [0, 0, 0, 0]
        images[a], images[b], images[c] = 1, 2, 3
        op = op.then(SymmetryOp.relabel(n, GroupAut(tuple(images))))
        z = apply(op, x)
        chosen = next(
            (pair_flow(n, g, j + 1, n) for g in (1, 2) for j in range(n - 1) if z.columns[j][g] > 0),
            None,
        )
        if chosen is None:
            raise ProofViolation(f"no alpha/beta entry outside the last column of {z}")
    try:
        rest = z - vertex_of(chosen)
    except ValueError:
        raise ProofViolation(f"{chosen} is not {z}-good") from None
    rest_flow = apply_to_flow(op.inverse(), _as_flow(rest))
    return GoodVertexResult(chosen, Branch.LEMMA4_K2, op), rest_flow


def decompose_k2(x: Point) -> tuple[Flow, Flow]:
    """Split a point of 2P_n ∩ L_n into two vertices."""
    d = decompose(x, 2)
    return d.vertices[0], d.vertices[1]


# ---------------------------------------------------------------------------
# k >= 3


def _single_facet_value(x: Point, j: int, g: int, k: int) -> int:
    """S_g(x, {j+1}) using that every column sums to k."""
    total = 0
    for i, c in enumerate(x.columns):
        pair = c[0] + c[g]
        total += pair if i == j else k - pair
    return total


def _accept(z: Point, k: int, vertex: Flow, branch: Branch, op: SymmetryOp) -> GoodVertexResult:
    v = vertex_of(vertex)
    if not z.dominates(v):
        raise ProofViolation(f"{branch.value}: {vertex} is not {z}-good (k={k})")
    m = is_member(z - v, k - 1)
    if not m:
        raise ProofViolation(
            f"{branch.value}: {z} - v({vertex}) leaves {k - 1}P_{z.n} at {m.violated} ({m.reason})"
        )
    return GoodVertexResult(vertex, branch, op)


def _thirds_columns(x: Point, k: int) -> list[int]:
    if k % 3:
        return []
    t = k // 3
    return [j for j, c in enumerate(x.columns) if multiset_key(c) == (t, t, t, 0)]


def _thirds_step(y: Point, k: int, op: SymmetryOp, thirds: list[int]) -> GoodVertexResult:
    n = y.n
    first = thirds[:3]
    order = first + [j for j in range(n) if j not in first]
    sigma = [0] * n
    for pos, j in enumerate(order):
        sigma[j] = pos
    h = [0] * n
    for pos in range(3):
        missing = y.columns[order[pos]].index(0)
        h[pos] = 3 ^ missing  # shift the empty slot onto gamma
    if n > 3:
        h[n - 1] = h[0] ^ h[1] ^ h[2]
    else:
        h[2] = h[0] ^ h[1]
    step = SymmetryOp(tuple(sigma), Flow(tuple(h)))
    op = op.then(step)
    w = apply(step, y)
    picks = [0, 0] + [next(g for g in range(4) if w.columns[j][g] > 0) for j in range(2, n)]
    need = 0
    for g in picks[2:]:
        need ^= g
    for g2 in (0, 1, 2):
        g1 = need ^ g2
        if g1 in (0, 1, 2) and not (g1 == g2 == picks[2]):
            picks[0], picks[1] = g1, g2
            return _accept(w, k, Flow(tuple(picks)), Branch.LEMMA6_THIRDS, op)
    raise ProofViolation(f"LEMMA6_THIRDS: no admissible g_1, g_2 for {w}")


def find_good_vertex(x: Point, k: int, *, fallback: bool = True, check: bool = True) -> GoodVertexResult:
    """Choose a vertex v with x - v in (k-1)P_n.

    Requires x in kP_n ∩ L_n, k >= 3 and no coordinate equal to k.  For
    n < 4 an inapplicable case falls back to exhaustive search when
    ``fallback`` is set; for n >= 4 a failure always raises ProofViolation.
    """
    if k < 3:
        raise PreconditionError("find_good_vertex needs k >= 3")
    if check:
        _require_member(x, k)
        if _saturated(x, k) is not None:
            raise PreconditionError(f"{x} has a coordinate equal to k={k}")
    try:
        return _casework(x, k)
    except ProofViolation:
        if not fallback or x.n >= MIN_CASEWORK_N:
            raise
        log.debug("casework failed on %s (k=%d); using exhaustive search", x, k)
    from .oracle import exhaustive_decompose

    flows = exhaustive_decompose(x, k)
    if flows is None:
        raise ProofViolation(f"exhaustive search found no decomposition of {x} (k={k})")
    return _accept(x, k, flows[0], Branch.ORACLE_FALLBACK, SymmetryOp.identity(x.n))


def _casework(x: Point, k: int) -> GoodVertexResult:
    n = x.n
    canon = canonicalize(x, k)
    y, op = canon.point, canon.op

    thirds = _thirds_columns(y, k)
    if len(thirds) >= 3:
        return _thirds_step(y, k, op, thirds)

    shift = exists_all_zero_max_shift(y)
    if shift is not None:
        op0 = op.then(SymmetryOp.shift(shift))
        return _accept(apply(SymmetryOp.shift(shift), y), k, Flow.zero(n), Branch.PROP_0_COND5, op0)

    last = y.columns[-1]
    if last[0] > 0:
        return _accept(y, k, Flow.zero(n), Branch.PROP_XN_POSITIVE, op)

    tight = [
        (g, j)
        for j in range(n - 1)
        for g in NONZERO
        if _single_facet_value(y, j, g, k) == k
    ]
    if not tight:
        for g in NONZERO:
            if last[g] == 0:
                continue
            for j in range(n - 1):
                if y.columns[j][g] > 0:
                    return _accept(y, k, pair_flow(n, g, j + 1, n), Branch.PROP_0NOF, op)
        raise ProofViolation(f"PROP_0NOF: no good vertex in V_n for {y}")

    g_f, j_f = tight[0]
    if len(tight) > 1:
        log.debug("%s lies on %d single-column facets", y, len(tight))
    op = op.then(SymmetryOp.transposition(n, j_f, 0))
    if g_f != 1:
        op = op.then(SymmetryOp.relabel(n, GroupAut.mapping(g_f, 1)))
    w = apply(op, x)
    for g in (2, 3):
        if w.columns[0][g] > 0 and w.columns[-1][g] > 0:
            return _accept(w, k, pair_flow(n, g, 1, n), Branch.PROP_0F, op)
    if w.columns[-1][1] > 0:
        for j in range(1, n - 1):
            if w.columns[j][1] > 0:
                return _accept(w, k, pair_flow(n, 1, j + 1, n), Branch.PROP_0F, op)
    raise ProofViolation(f"PROP_0F: no good vertex in V_n for {w}")


# ---------------------------------------------------------------------------
# driver


def decompose(x: Point, k: int, *, fallback: bool = True) -> Decomposition:
    """Write x in kP_n ∩ L_n as a sum of k vertices of P_n."""
    if k < 1:
        raise PreconditionError("k must be positive")
    _require_member(x, k)

    out: list[Flow] = []
    trace: list[TraceStep] = []
    lifts: list[ReducedColumn] = []

    def emit(flow: Flow) -> None:
        for red in reversed(lifts):
            flow = red.lift(flow)
        out.append(flow)

    y, level = x, k
    while True:
        if level == 1:
            trace.append(TraceStep(Branch.BASE_VERTEX, SymmetryOp.identity(y.n), 1, _as_flow(y)))
            emit(_as_flow(y))
            break
        if y.n == 1:
            # kP_1 ∩ L_1 is the single point with x_0 = k
            trace.append(TraceStep(Branch.BASE_VERTEX, SymmetryOp.identity(1), level, Flow.zero(1)))
            for _ in range(level):
                emit(Flow.zero(1))
            break
        red = _reduce(y, level)
        if red is not None:
            trace.append(TraceStep(Branch.LEMMA3_PROJECTION, red.op, level))
            lifts.append(red)
            y = red.point
            continue
        if level == 2:
            res, rest = _k2_step(y)
            trace.append(TraceStep(res.branch, res.op, 2, res.vertex))
            emit(res.original_vertex)
            emit(rest)
            break
        res = find_good_vertex(y, level, fallback=fallback, check=False)
        trace.append(TraceStep(res.branch, res.op, level, res.vertex))
        v = res.original_vertex
        emit(v)
        y = y - vertex_of(v)
        level -= 1

    d = Decomposition(k, out, trace)
    if len(out) != k or d.total() != x:
        raise ProofViolation(f"decomposition of {x} does not sum back to it")
    return d
