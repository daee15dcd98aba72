"""Small structures up to isomorphism: posets, lattices, ordered posets."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .structures import FinitePoset, LinearlyOrderedPoset, canonical_form, is_lattice_poset
from .amalgamation import naturally_labelled_posets

MAX_GEN_N = 7


def _downsets(p: FinitePoset) -> Iterator[int]:
    """Every downset of p as a bitmask, by a simple closure check."""
    down = p.down
    for mask in range(1 << p.n):
        if all(down[i] & ~mask == 0 for i in range(p.n) if mask >> i & 1):
            yield mask


@lru_cache(maxsize=None)
def _posets(n: int) -> tuple[FinitePoset, ...]:
    if n == 0:
        return (FinitePoset(0, ()),)
    seen: dict[tuple, FinitePoset] = {}
    for p in _posets(n - 1):
        # every poset arises from a smaller one by adding a maximal element
        for below in _downsets(p):
            up = [row | (1 << (n - 1)) if below >> i & 1 else row for i, row in enumerate(p.up)]
            up.append(1 << (n - 1))
            q = FinitePoset(n, tuple(up))
            form = canonical_form(q)
            if form.encoding not in seen:
                seen[form.encoding] = q.relabel(form.relabeling)
    return tuple(seen[k] for k in sorted(seen))


def posets_up_to_iso(n: int, max_n: int = MAX_GEN_N) -> tuple[FinitePoset, ...]:
    """One canonical representative per isomorphism type of n-element poset."""
    if n > max_n:
        raise ValueError(f"poset generation for n={n} exceeds bound {max_n}")
    return _posets(n)


def lattice_posets(n: int, max_n: int = MAX_GEN_N) -> list[FinitePoset]:
    return [p for p in posets_up_to_iso(n, max_n) if is_lattice_poset(p)]


def ordered_posets_up_to_iso(n: int) -> list[LinearlyOrderedPoset]:
    """Every linearly ordered poset on n points up to isomorphism.

    An isomorphism of linearly ordered posets must respect the linear order,
    so fixing that order to 0 < 1 < ... leaves one labelled partial order per type.
    """
    return [LinearlyOrderedPoset(p, tuple(range(n))) for p in naturally_labelled_posets(n)]


def census(max_n: int) -> list[dict]:
    rows = []
    for n in range(1, max_n + 1):
        ps = posets_up_to_iso(n)
        rows.append({
            "n": n,
            "posets": len(ps),
            "lattices": sum(1 for p in ps if is_lattice_poset(p)),
            "ordered_posets": sum(1 for _ in naturally_labelled_posets(n)),
        })
    return rows
