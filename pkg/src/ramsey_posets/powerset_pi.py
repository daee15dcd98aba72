"""Subsets of {1..n} as bitmasks, the three subset orders, Π_n and downsets.

Bit ``i-1`` of a mask stands for the number ``i``.  Π_n has the 2^n subsets
as elements (element index = mask), reverse inclusion as its partial order
and the complemented lexicographic order as its linear order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Iterable, Sequence

from .structures import FinitePoset, LinearlyOrderedPoset, bits, to_mask

VARIANTS = ("lex", "alex", "clex")

MAX_PI_N = 12


def subset_mask(items: Iterable[int]) -> int:
    """Mask of a set of positive integers (1-based)."""
    m = 0
    for i in items:
        if i < 1:
            raise ValueError(f"subset elements are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def mask_items(mask: int) -> list[int]:
    return [b + 1 for b in bits(mask)]


def _lowest(m: int) -> int:
    return (m & -m).bit_length()


def _highest(m: int) -> int:
    return m.bit_length()


def precedes(variant: str, a: int, b: int) -> bool:
    """Strict comparison of two subset masks under ``variant``.

    lex:  A ⊆ B, or min(B∖A) < min(A∖B) when incomparable
    alex: A ⊆ B, or max(A∖B) < max(B∖A) when incomparable
    clex: A ⊇ B, or min(A∖B) < min(B∖A) when incomparable
    """
    if a == b:
        return False
    a_only, b_only = a & ~b, b & ~a
    if variant == "lex":
        if not a_only:
            return True
        if not b_only:
            return False
        return _lowest(b_only) < _lowest(a_only)
    if variant == "alex":
        if not a_only:
            return True
        if not b_only:
            return False
        return _highest(a_only) < _highest(b_only)
    if variant == "clex":
        if not b_only:
            return True
        if not a_only:
            return False
        return _lowest(a_only) < _lowest(b_only)
    raise ValueError(f"unknown subset order {variant!r}")


def compare(variant: str, a: Iterable[int], b: Iterable[int], n: int) -> str:
    """Return ``"less"``, ``"greater"`` or ``"equal"`` for subsets of {1..n}."""
    ma, mb = subset_mask(a), subset_mask(b)
    if (ma | mb) >> n:
        raise ValueError(f"subsets must lie inside {{1..{n}}}")
    if ma == mb:
        return "equal"
    return "less" if precedes(variant, ma, mb) else "greater"


def subset_key(variant: str):
    """Sort key realizing ``variant`` on masks."""
    return cmp_to_key(lambda a, b: -1 if precedes(variant, a, b) else (0 if a == b else 1))


def sorted_subsets(variant: str, n: int) -> list[int]:
    return sorted(range(1 << n), key=subset_key(variant))


@dataclass(frozen=True)
class PowersetPi:
    """Π_n without materializing its 2^n × 2^n relation.

    Offers the ``n``/``leq``/``less`` surface used by map validation, which
    is all Φ needs at lengths where building the relation is out of reach.
    """

    bits: int

    kind = "ordered_poset"

    @property
    def n(self) -> int:
        return 1 << self.bits

    def leq(self, i: int, j: int) -> bool:
        return i & j == j

    def less(self, i: int, j: int) -> bool:
        return precedes("clex", i, j)

    def materialize(self) -> LinearlyOrderedPoset:
        return pi(self.bits)


def pi(n: int, max_n: int = MAX_PI_N) -> LinearlyOrderedPoset:
    """Π_n as an explicit linearly ordered poset; element index = subset mask."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise ValueError(f"pi({n}) has 2^{n} elements; bound is n <= {max_n}")
    size = 1 << n
    # i ⊑ j in Π_n iff i ⊇ j
    up = tuple(to_mask(j for j in range(size) if i & j == j) for i in range(size))
    return LinearlyOrderedPoset(FinitePoset(size, up), tuple(sorted_subsets("clex", n)))


def pi_labels(n: int) -> list[list[int]]:
    return [mask_items(m) for m in range(1 << n)]


@dataclass(frozen=True)
class DownsetProfile:
    poset: LinearlyOrderedPoset
    downsets: tuple[int, ...]  # masks over rank labels: bit r means label r+1

    @property
    def m(self) -> int:
        return len(self.downsets)

    def label_sets(self) -> list[list[int]]:
        return [mask_items(d) for d in self.downsets]

    def element_sets(self) -> list[frozenset[int]]:
        order = self.poset.order
        return [frozenset(order[r] for r in bits(d)) for d in self.downsets]

    def containing(self, element: int) -> list[int]:
        """1-based indices α of the downsets D_α holding ``element``."""
        r = self.poset.rank[element]
        return [a + 1 for a, d in enumerate(self.downsets) if d >> r & 1]


def iter_downsets(p: FinitePoset, order: Sequence[int]) -> list[int]:
    """All downsets of ``p`` as element masks; ``order`` must be a linear extension."""
    strict_down = [d & ~(1 << i) for i, d in enumerate(p.down)]
    out: list[int] = []

    def extend(pos: int, current: int):
        if pos == len(order):
            out.append(current)
            return
        e = order[pos]
        extend(pos + 1, current)
        if strict_down[e] & ~current == 0:
            extend(pos + 1, current | 1 << e)

    extend(0, 0)
    return out


def downset_profile(a: LinearlyOrderedPoset) -> DownsetProfile:
    """Nonempty downsets of ``a`` sorted by the anti-lexicographic order.

    Elements are labelled 1..n by their rank in ``a``'s linear order before
    sorting.
    """
    rank = a.rank
    labelled = []
    for d in iter_downsets(a.poset, a.order):
        if d:
            labelled.append(to_mask(rank[e] for e in bits(d)))
    return DownsetProfile(a, tuple(sorted(labelled, key=subset_key("alex"))))
