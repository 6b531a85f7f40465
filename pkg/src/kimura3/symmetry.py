"""Symmetries of P_n and the normal form used by the decomposition.

Three actions permute the coordinates of R^{4n}:

* a column permutation ``sigma`` moves column j to position ``sigma[j]``;
* a flow ``h`` adds ``h_j`` to every element of multiset j, i.e.
  ``(hx)_g^j = x_{g+h_j}^j``;
* an automorphism ``phi`` of G relabels elements, ``phi(x)_{phi(g)}^j = x_g^j``.

A :class:`SymmetryOp` always applies them in that order (sigma, then h,
then phi).  Composites and inverses are rewritten back into this order using
``sigma o h = sigma(h) o sigma`` and ``phi o h = phi(h) o phi``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import PreconditionError
from .group import IDENTITY_AUT, GroupAut
from .polytope import Column, Flow, Point, in_lattice


def _identity_perm(n: int) -> tuple[int, ...]:
    return tuple(range(n))


@dataclass(frozen=True)
class SymmetryOp:
    """Composite symmetry ``phi o h o sigma``.

    ``sigma`` is 0-based: ``sigma[j]`` is where column j ends up.  ``h`` is
    indexed by positions *after* the permutation.
    """

    sigma: tuple[int, ...]
    h: Flow
    phi: GroupAut = field(default=IDENTITY_AUT)

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise ValueError(f"not a permutation: {sigma}")
        if not isinstance(self.h, Flow):
            object.__setattr__(self, "h", Flow(tuple(self.h)))
        if self.h.n != len(sigma):
            raise ValueError("sigma and h have different arity")

    @classmethod
    def identity(cls, n: int) -> SymmetryOp:
        return cls(_identity_perm(n), Flow.zero(n))

    @classmethod
    def permutation(cls, sigma: Sequence[int]) -> SymmetryOp:
        return cls(tuple(sigma), Flow.zero(len(sigma)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> SymmetryOp:
        """Swap 0-based columns i and j."""
        sigma = list(range(n))
        sigma[i], sigma[j] = j, i
        return cls.permutation(sigma)

    @classmethod
    def shift(cls, h: Flow | Sequence[int]) -> SymmetryOp:
        h = h if isinstance(h, Flow) else Flow(tuple(h))
        return cls(_identity_perm(h.n), h)

    @classmethod
    def relabel(cls, n: int, phi: GroupAut) -> SymmetryOp:
        return cls(_identity_perm(n), Flow.zero(n), phi)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def then(self, other: SymmetryOp) -> SymmetryOp:
        """The composite that applies ``self`` first and ``other`` second."""
        if other.n != self.n:
            raise ValueError("arity mismatch")
        sigma = tuple(other.sigma[s] for s in self.sigma)
        moved = [0] * self.n
        for i, g in enumerate(self.h.entries):
            moved[other.sigma[i]] = g
        phi_a_inv = self.phi.inverse()
        h = tuple(phi_a_inv(hb) ^ m for hb, m in zip(other.h.entries, moved))
        return SymmetryOp(sigma, Flow(h), self.phi.then(other.phi))

    def inverse(self) -> SymmetryOp:
        inv_sigma = [0] * self.n
        for j, s in enumerate(self.sigma):
            inv_sigma[s] = j
        h = [0] * self.n
        for i, g in enumerate(self.h.entries):
            h[inv_sigma[i]] = self.phi(g)
        return SymmetryOp(tuple(inv_sigma), Flow(tuple(h)), self.phi.inverse())

    def is_identity(self) -> bool:
        return (
            self.sigma == _identity_perm(self.n)
            and not any(self.h.entries)
            and self.phi.is_identity()
        )


def apply(op: SymmetryOp, x: Point) -> Point:
    if op.n != x.n:
        raise ValueError(f"operation has arity {op.n}, point has {x.n} columns")
    out: list[Column | None] = [None] * x.n
    phi = op.phi.images
    h = op.h.entries
    for j, col in enumerate(x.columns):
        pos = op.sigma[j]
        shift = h[pos]
        new = [0, 0, 0, 0]
        for g in range(4):
            new[phi[g]] = col[g ^ shift]
        out[pos] = tuple(new)
    return Point(tuple(out))


def apply_to_flow(op: SymmetryOp, flow: Flow) -> Flow:
    """Image of a vertex under ``op``, expressed as a flow."""
    if op.n != flow.n:
        raise ValueError("arity mismatch")
    out = [0] * flow.n
    for j, g in enumerate(flow.entries):
        pos = op.sigma[j]
        out[pos] = op.phi(g ^ op.h.entries[pos])
    return Flow(tuple(out))


def generators(n: int) -> list[SymmetryOp]:
    """A generating set for the joint action of S_n, H_n and Aut(G)."""
    ops = [SymmetryOp.transposition(n, j, j + 1) for j in range(n - 1)]
    for j in range(n - 1):
        for g in (1, 2):
            h = [0] * n
            h[j] = h[n - 1] = g
            ops.append(SymmetryOp.shift(h))
    ops.append(SymmetryOp.relabel(n, GroupAut((0, 2, 1, 3))))
    ops.append(SymmetryOp.relabel(n, GroupAut((0, 2, 3, 1))))
    return ops


# ---------------------------------------------------------------------------
# multiset ordering and the sorted, zero-mode normal form


def multiset_key(col: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(col, reverse=True))


def multiset_compare(a: Sequence[int], b: Sequence[int]) -> int:
    """Compare two 4-multisets with equal sums: 1 if a > b, 0 if equal, -1 if a < b.

    >>> multiset_compare((3, 1, 0, 0), (2, 1, 1, 0))
    1
    """
    if len(a) != 4 or len(b) != 4:
        raise ValueError("multisets have exactly four entries")
    if sum(a) != sum(b):
        raise ValueError(f"multisets {tuple(a)} and {tuple(b)} have different sums")
    ka, kb = multiset_key(a)[:3], multiset_key(b)[:3]
    return (ka > kb) - (ka < kb)


def most_frequent(col: Sequence[int]) -> int:
    """The most frequent element of a column; ties go to the smallest in 0<a<b<g."""
    best = max(col)
    return next(g for g in range(4) if col[g] == best)


def argmax_set(col: Sequence[int]) -> tuple[int, ...]:
    best = max(col)
    return tuple(g for g in range(4) if col[g] == best)


@dataclass(frozen=True)
class CanonicalForm:
    point: Point
    op: SymmetryOp


def last_column_smallest(x: Point) -> bool:
    last = x.columns[-1]
    return all(multiset_compare(c, last) >= 0 for c in x.columns[:-1])


def zero_is_mode_before_last(x: Point) -> bool:
    return all(c[0] == max(c) for c in x.columns[:-1])


def canonicalize(x: Point, k: int) -> CanonicalForm:
    """Move the smallest multiset last, then make 0 the mode of every other column."""
    ok, colsum = in_lattice(x)
    if not ok or colsum != k:
        raise PreconditionError(f"{x} is not a lattice point with column sum {k}")
    n = x.n
    order = sorted(range(n), key=lambda j: multiset_key(x.columns[j]), reverse=True)
    sigma = [0] * n
    for pos, j in enumerate(order):
        sigma[j] = pos
    h = [most_frequent(x.columns[j]) for j in order[:-1]]
    last = 0
    for g in h:
        last ^= g
    op = SymmetryOp(tuple(sigma), Flow((*h, last)))
    return CanonicalForm(apply(op, x), op)


def exists_all_zero_max_shift(x: Point) -> Flow | None:
    """Find h in H_n such that 0 is a most frequent element of every column of hx.

    Such h is exactly a zero-sum choice of one argmax element per column.
    A forward pass tracks which of the four partial sums are reachable.
    """
    reach: list[dict[int, tuple[int, int] | None]] = [{0: None}]
    for col in x.columns:
        nxt: dict[int, tuple[int, int] | None] = {}
        for s in sorted(reach[-1]):
            for m in argmax_set(col):
                nxt.setdefault(s ^ m, (s, m))
        reach.append(nxt)
    if 0 not in reach[-1]:
        return None
    picks = []
    s = 0
    for layer in reversed(reach[1:]):
        prev, m = layer[s]
        picks.append(m)
        s = prev
    return Flow(tuple(reversed(picks)))
