"""Points, flows and the facet description of the polytope family P_n.

A point of R^{4n} is stored column by column: ``columns[j][g]`` is the
coordinate x_g^{j+1}.  Column indices are 0-based internally; the public
constructors that talk about named vertices and odd subsets (``pair_flow``,
:class:`OddSubset`) use 1-based columns.

The facet form S_g(x, A) gives columns inside A the pair {0, g} and columns
outside A the complementary pair.  Membership in the dilation kP_n is a full
scan over all 3 * 2^(n-1) forms, vectorised over subsets with numpy.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError
from .group import NONZERO, SYMBOLS, G, parse_element

#: Largest column count accepted by the facet scan.
MAX_FACET_COLUMNS = 24

Column = tuple[int, int, int, int]


@dataclass(frozen=True)
class Point:
    """A nonnegative integer point, i.e. a G-presentation of n multisets."""

    columns: tuple[Column, ...]

    def __post_init__(self):
        cols = tuple(tuple(int(v) for v in c) for c in self.columns)
        if not cols:
            raise ValueError("a point needs at least one column")
        for c in cols:
            if len(c) != 4:
                raise ValueError(f"columns have 4 coordinates, got {c}")
            if min(c) < 0:
                raise ValueError(f"negative coordinate in column {c}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_presentation(cls, multisets: Sequence[str] | str) -> Point:
        """Build a point from multisets written over {0,a,b,g}.

        Accepts a list of strings or one string with columns separated by
        ``/``, e.g. ``"aab/0bg/ggg"``.
        """
        if isinstance(multisets, str):
            multisets = multisets.split("/")
        cols = []
        for ms in multisets:
            c = [0, 0, 0, 0]
            for ch in ms.strip():
                c[parse_element(ch)] += 1
            cols.append(tuple(c))
        return cls(tuple(cols))

    @classmethod
    def from_array(cls, arr) -> Point:
        return cls(tuple(tuple(int(v) for v in row) for row in np.asarray(arr).reshape(-1, 4)))

    @classmethod
    def zeros(cls, n: int) -> Point:
        return cls(((0, 0, 0, 0),) * n)

    @property
    def n(self) -> int:
        return len(self.columns)

    def column_sums(self) -> list[int]:
        return [sum(c) for c in self.columns]

    def group_sum(self) -> G:
        acc = 0
        for c in self.columns:
            for g in (1, 2, 3):
                if c[g] & 1:
                    acc ^= g
        return G(acc)

    def coord(self, j: int, g: int) -> int:
        """x_g^j with 1-based column index ``j``."""
        return self.columns[j - 1][g]

    def presentation(self) -> str:
        return "/".join("".join(SYMBOLS[g] * c[g] for g in range(4)) for c in self.columns)

    def as_array(self) -> np.ndarray:
        return np.array(self.columns, dtype=np.int64)

    def __add__(self, other: Point) -> Point:
        if not isinstance(other, Point):
            return NotImplemented
        _check_arity(self.n, other.n)
        return Point(tuple(
            (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
            for a, b in zip(self.columns, other.columns)
        ))

    def __sub__(self, other: Point) -> Point:
        """Coordinatewise difference; raises ValueError if it goes negative."""
        if not isinstance(other, Point):
            return NotImplemented
        _check_arity(self.n, other.n)
        return Point(tuple(
            (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])
            for a, b in zip(self.columns, other.columns)
        ))

    def dominates(self, other: Point) -> bool:
        """True if ``self - other`` has no negative coordinate."""
        return all(a >= b for ca, cb in zip(self.columns, other.columns) for a, b in zip(ca, cb))

    def __str__(self) -> str:
        return self.presentation()


@dataclass(frozen=True)
class Flow:
    """A group-based flow: n group elements summing to 0."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(g) for g in self.entries)
        if not entries:
            raise ValueError("a flow needs at least one entry")
        acc = 0
        for g in entries:
            if g not in (0, 1, 2, 3):
                raise ValueError(f"not a group element: {g}")
            acc ^= g
        if acc:
            raise ValueError(
                f"entries {''.join(SYMBOLS[g] for g in entries)} sum to {SYMBOLS[acc]}, not 0"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> Flow:
        return cls(tuple(int(parse_element(ch)) for ch in text.strip()))

    @classmethod
    def zero(cls, n: int) -> Flow:
        return cls((0,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "".join(SYMBOLS[g] for g in self.entries)


def vertex_of(flow: Flow | Sequence[int]) -> Point:
    if not isinstance(flow, Flow):
        flow = Flow(tuple(flow))
    cols = []
    for g in flow.entries:
        c = [0, 0, 0, 0]
        c[g] = 1
        cols.append(tuple(c))
    return Point(tuple(cols))


def pair_flow(n: int, g: int, j: int, jp: int) -> Flow:
    """The flow of v(g)_{j,j'}: g at 1-based places j and j', 0 elsewhere."""
    if not (1 <= j <= n and 1 <= jp <= n) or j == jp:
        raise ValueError(f"need distinct places in 1..{n}, got {j}, {jp}")
    entries = [0] * n
    entries[j - 1] = g
    entries[jp - 1] = g
    return Flow(tuple(entries))


def distinguished_flows(n: int) -> list[Flow]:
    """V_n: v(0) together with every v(g)_{j,n}, j < n, g nonzero."""
    flows = [Flow.zero(n)]
    for j in range(1, n):
        for g in NONZERO:
            flows.append(pair_flow(n, g, j, n))
    return flows


def enumerate_vertices(n: int) -> list[Flow]:
    """All 4^(n-1) flows of length n; the last entry closes the sum."""
    if n < 1:
        raise ValueError("n must be positive")
    flows = []
    for head in product(range(4), repeat=n - 1):
        last = 0
        for g in head:
            last ^= g
        flows.append(Flow((*head, last)))
    return flows


def in_lattice(x: Point) -> tuple[bool, int | None]:
    """Check membership in L_n; returns ``(ok, k)`` with k the column sum."""
    sums = x.column_sums()
    if any(s != sums[0] for s in sums) or x.group_sum() != 0:
        return False, None
    return True, sums[0]


@dataclass(frozen=True)
class OddSubset:
    """An odd-size subset of {1..n}."""

    n: int
    members: frozenset[int]

    def __post_init__(self):
        members = frozenset(int(j) for j in self.members)
        object.__setattr__(self, "members", members)
        if any(not 1 <= j <= self.n for j in members):
            raise ValueError(f"subset {sorted(members)} not inside 1..{self.n}")
        if len(members) % 2 == 0:
            raise ValueError(f"subset {sorted(members)} has even size")

    @classmethod
    def of(cls, n: int, *members: int) -> OddSubset:
        return cls(n, frozenset(members))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> OddSubset:
        return cls(n, frozenset(j + 1 for j in range(n) if mask >> j & 1))

    @property
    def mask(self) -> int:
        m = 0
        for j in self.members:
            m |= 1 << (j - 1)
        return m

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return "{" + ",".join(str(j) for j in sorted(self.members)) + "}"


@dataclass(frozen=True)
class FacetId:
    g: int
    A: OddSubset

    def __post_init__(self):
        if self.g not in (1, 2, 3):
            raise ValueError("facet forms are indexed by nonzero elements")
        object.__setattr__(self, "g", G(self.g))

    def __str__(self) -> str:
        return f"S_{SYMBOLS[self.g]}{self.A}"


def odd_subsets(n: int) -> list[OddSubset]:
    return [OddSubset.from_mask(n, int(m)) for m in _odd_masks(n)]


def facets(n: int) -> list[FacetId]:
    """All facet forms in scan order: subsets by ascending bitmask, then g."""
    return [FacetId(g, A) for A in odd_subsets(n) for g in NONZERO]


@lru_cache(maxsize=None)
def _odd_masks(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    bits = (masks[:, None] >> np.arange(n)) & 1
    return masks[bits.sum(axis=1) % 2 == 1]


@lru_cache(maxsize=None)
def _odd_indicator(n: int) -> np.ndarray:
    """0/1 matrix of shape (2^(n-1), n); row i is the i-th odd subset."""
    masks = _odd_masks(n)
    ind = (masks[:, None] >> np.arange(n)) & 1
    ind.setflags(write=False)
    return ind


def _check_arity(n: int, m: int) -> None:
    if n != m:
        raise ValueError(f"dimension mismatch: {n} columns vs {m}")


def eval_S(x: Point, A: OddSubset, g: int) -> int:
    _check_arity(x.n, A.n)
    if g not in (1, 2, 3):
        raise ValueError("g must be alpha, beta or gamma")
    inside = (0, g)
    outside = tuple(h for h in (1, 2, 3) if h != g)
    total = 0
    for j, c in enumerate(x.columns, start=1):
        pair = inside if j in A.members else outside
        total += c[pair[0]] + c[pair[1]]
    return total


def facet_values(arr: np.ndarray) -> np.ndarray:
    """All facet form values for a batch of points.

    ``arr`` has shape (N, n, 4).  Returns shape (N, 2^(n-1), 3): entry
    [i, a, g-1] is S_g(x_i, A_a) with subsets in ascending bitmask order.
    """
    arr = np.asarray(arr, dtype=np.int64)
    n = arr.shape[1]
    ind = _odd_indicator(n)
    colsum = arr.sum(axis=2)
    out = np.empty((arr.shape[0], ind.shape[0], 3), dtype=np.int64)
    for g in (1, 2, 3):
        pair = arr[:, :, 0] + arr[:, :, g]
        rest = colsum - pair
        # columns in A give `pair`, the others give `rest`
        out[:, :, g - 1] = rest.sum(axis=1)[:, None] + (pair - rest) @ ind.T
    return out


class Membership(NamedTuple):
    member: bool
    violated: FacetId | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.member


def is_member(x: Point, k: int, max_n: int = MAX_FACET_COLUMNS) -> Membership:
    """Decide whether x lies in the dilation kP_n.

    On failure the first violated constraint is reported: a facet form in
    :func:`facets` order, or a column-sum mismatch (``violated`` is None).
    """
    if x.n > max_n:
        raise PreconditionError(f"n={x.n} exceeds the facet scan cap {max_n}")
    for j, s in enumerate(x.column_sums(), start=1):
        if s != k:
            return Membership(False, None, f"column {j} sums to {s}, not {k}")
    vals = facet_values(x.as_array()[None])[0]
    bad = np.argwhere(vals < k)
    if len(bad):
        a, g = bad[0]
        A = OddSubset.from_mask(x.n, int(_odd_masks(x.n)[a]))
        return Membership(False, FacetId(int(g) + 1, A), f"S = {int(vals[a, g])} < {k}")
    return Membership(True)


def lies_on_dilated_facet(x: Point, k: int, f: FacetId) -> bool:
    if not is_member(x, k):
        raise PreconditionError(f"{x} is not in {k}P_{x.n}")
    return eval_S(x, f.A, f.g) == k


def parity_check(x: Point, k: int, A: OddSubset, g: int) -> bool:
    ok, colsum = in_lattice(x)
    if not ok or colsum != k:
        raise PreconditionError(f"{x} is not a lattice point with column sum {k}")
    return (eval_S(x, A, g) - k) % 2 == 0


def points_to_array(points: Sequence[Point]) -> np.ndarray:
    return np.array([p.columns for p in points], dtype=np.int64)
