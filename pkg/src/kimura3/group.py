"""Arithmetic of the Klein four-group G = Z2 x Z2.

Elements are encoded as two bits (0, alpha=1, beta=2, gamma=3) so that the
group law is bitwise XOR.  Hot loops elsewhere in the package work on the raw
ints; :class:`G` is the public, named view of the same values.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from itertools import permutations


class G(IntEnum):
    ZERO = 0
    ALPHA = 1
    BETA = 2
    GAMMA = 3

    @property
    def symbol(self) -> str:
        return SYMBOLS[self]

    def __add__(self, other):  # type: ignore[override]
        if isinstance(other, int):
            return G(self.value ^ int(other))
        return NotImplemented

    __radd__ = __add__

    def __str__(self) -> str:
        return self.symbol


ELEMENTS: tuple[G, ...] = (G.ZERO, G.ALPHA, G.BETA, G.GAMMA)
NONZERO: tuple[G, ...] = (G.ALPHA, G.BETA, G.GAMMA)

SYMBOLS = ("0", "a", "b", "g")
_LONG_NAMES = ("0", "alpha", "beta", "gamma")
_BY_NAME = {name: G(i) for i, name in enumerate(SYMBOLS)}
_BY_NAME.update({name: G(i) for i, name in enumerate(_LONG_NAMES)})
_BY_NAME["zero"] = G.ZERO


def parse_element(text: str) -> G:
    """Parse ``"0"``, ``"a"``/``"alpha"``, ... (case-insensitive)."""
    try:
        return _BY_NAME[text.strip().lower()]
    except KeyError:
        raise ValueError(f"unknown group element {text!r}") from None


def add(a: int, b: int) -> G:
    return G(a ^ b)


def total(elements) -> G:
    """Sum of an iterable of group elements."""
    acc = 0
    for e in elements:
        acc ^= e
    return G(acc)


@dataclass(frozen=True)
class GroupAut:
    """An automorphism of G, stored as the image of every element.

    ``images[g]`` is the image of ``g``; ``images[0]`` is always 0 and the
    remaining three entries permute {alpha, beta, gamma}.  Any such
    permutation is automatic: Aut(G) is the full symmetric group on the three
    involutions.
    """

    images: tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        if len(self.images) != 4 or self.images[0] != 0 or sorted(self.images) != [0, 1, 2, 3]:
            raise ValueError(f"not an automorphism of Z2xZ2: {self.images}")

    def __call__(self, g: int) -> G:
        return G(self.images[g])

    @classmethod
    def from_name(cls, name: str) -> GroupAut:
        """Inverse of :attr:`name`, e.g. ``"bag"`` swaps alpha and beta."""
        if len(name) != 3:
            raise ValueError(f"automorphism name must have 3 letters, got {name!r}")
        return cls((0, *(int(parse_element(c)) for c in name)))

    @classmethod
    def mapping(cls, src: int, dst: int) -> GroupAut:
        """Some automorphism sending nonzero ``src`` to nonzero ``dst``.

        Chooses the transposition (or the identity) so the result is
        deterministic.
        """
        if src == 0 or dst == 0:
            raise ValueError("automorphisms fix 0")
        images = [0, 1, 2, 3]
        images[src], images[dst] = dst, src
        return cls(tuple(images))

    @property
    def name(self) -> str:
        return "".join(SYMBOLS[i] for i in self.images[1:])

    def inverse(self) -> GroupAut:
        inv = [0] * 4
        for g, img in enumerate(self.images):
            inv[img] = g
        return GroupAut(tuple(inv))

    def then(self, other: GroupAut) -> GroupAut:
        """Composite: apply ``self`` first, then ``other``."""
        return GroupAut(tuple(other.images[self.images[g]] for g in range(4)))

    def is_identity(self) -> bool:
        return self.images == (0, 1, 2, 3)


IDENTITY_AUT = GroupAut()
AUTOMORPHISMS: tuple[GroupAut, ...] = tuple(
    GroupAut((0, *p)) for p in permutations((1, 2, 3))
)


def apply_aut(phi: GroupAut, g: int) -> G:
    return phi(g)


@dataclass(frozen=True)
class ParityChar:
    """Index-2 homomorphism G -> Z2 whose kernel is {0, kernel_elem}."""

    kernel_elem: int

    def __post_init__(self):
        if self.kernel_elem not in (1, 2, 3):
            raise ValueError("kernel element must be nonzero")

    def __call__(self, g: int) -> int:
        return 0 if g == 0 or g == self.kernel_elem else 1


PARITY_CHARS: tuple[ParityChar, ...] = tuple(ParityChar(g) for g in NONZERO)


def char_value(chi: ParityChar, g: int) -> int:
    return chi(g)
