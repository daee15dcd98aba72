"""Free amalgamation of ordered structures, the weak triangle condition and ∇.

The code here works for any *ordered structure*: an object with
``partial_orders()`` (a tuple of partial-order row tuples), an ``order``
permutation extending each of them, ``induced`` and ``rebuild``.
Linearly ordered posets and ordered multiposets both qualify.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .structures import (
    FinitePoset,
    LinearlyOrderedPoset,
    canonical_form,
    iter_relational_embeddings,
    transitive_closure,
)


class ClosureViolation(RuntimeError):
    """Free amalgamation produced a non-poset or broke an embedding."""


class MissingSigma(LookupError):
    pass


class WtcNotFound(LookupError):
    def __init__(self, sigma):
        super().__init__("no witness triangle found for a 2-element type")
        self.sigma = sigma


@dataclass(frozen=True)
class AmalgamationInstance:
    a: object
    b1: object
    b2: object
    f1: tuple[int, ...]
    f2: tuple[int, ...]


@dataclass(frozen=True)
class Amalgam:
    d: object
    g1: tuple[int, ...]
    g2: tuple[int, ...]


def _is_ordered_embedding(src, dst, m: Sequence[int]) -> bool:
    for r_src, r_dst in zip(src.relations(), dst.relations()):
        for i in range(src.n):
            for j in range(src.n):
                if (r_src[i] >> j & 1) != (r_dst[m[i]] >> m[j] & 1):
                    return False
    return len(set(m)) == len(m)


def amalgamate(inst: AmalgamationInstance) -> Amalgam:
    """Free amalgam of two ordered structures over a common substructure.

    b1 keeps its indices; the elements of b2 outside f2's image follow in
    index order.  Each partial order is the transitive closure of the union.
    The linear order is a greedy topological sort of everything that must
    hold, preferring b1 elements and then the element's rank in its own input.
    """
    a, b1, b2, f1, f2 = inst.a, inst.b1, inst.b2, tuple(inst.f1), tuple(inst.f2)
    if not (_is_ordered_embedding(a, b1, f1) and _is_ordered_embedding(a, b2, f2)):
        raise ValueError("f1 and f2 must be embeddings of ordered structures")
    n1 = b1.n
    g1 = tuple(range(n1))
    g2 = [0] * b2.n
    shared = {f2[i]: f1[i] for i in range(a.n)}
    nxt = n1
    for j in range(b2.n):
        if j in shared:
            g2[j] = shared[j]
        else:
            g2[j] = nxt
            nxt += 1
    n = nxt

    orders = []
    for rows1, rows2 in zip(b1.partial_orders(), b2.partial_orders()):
        rows = list(rows1) + [0] * (n - n1)
        for j in range(b2.n):
            for t in range(b2.n):
                if rows2[j] >> t & 1:
                    rows[g2[j]] |= 1 << g2[t]
        rows = transitive_closure(rows)
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i] >> j & 1 and rows[j] >> i & 1:
                    raise ClosureViolation(f"closure makes {i} and {j} equivalent")
        orders.append(rows)

    # precedence constraints: all partial orders plus both input linear orders
    preds = [0] * n
    for rows in orders:
        for i in range(n):
            for j in range(n):
                if i != j and rows[i] >> j & 1:
                    preds[j] |= 1 << i
    for s, g in ((b1, g1), (b2, g2)):
        for r in range(1, s.n):
            preds[g[s.order[r]]] |= 1 << g[s.order[r - 1]]
    tie = [(0, b1.rank[i]) for i in range(n1)] + [(1, 0)] * (n - n1)
    for j in range(b2.n):
        if g2[j] >= n1:
            tie[g2[j]] = (1, b2.rank[j])
    order = []
    placed = 0
    while len(order) < n:
        ready = [e for e in range(n) if not placed >> e & 1 and preds[e] & ~placed == 0]
        if not ready:
            raise ClosureViolation("input orders cannot be merged")
        e = min(ready, key=lambda x: tie[x])
        order.append(e)
        placed |= 1 << e
    d = b1.rebuild(orders, order)
    if not (_is_ordered_embedding(b1, d, g1) and _is_ordered_embedding(b2, d, g2)):
        raise ClosureViolation("amalgam does not contain both inputs as substructures")
    if any(g1[f1[i]] != g2[f2[i]] for i in range(a.n)):
        raise ClosureViolation("square does not commute")
    return Amalgam(d, g1, tuple(g2))


def amalgamate_ordered_posets(inst: AmalgamationInstance) -> Amalgam:
    for s in (inst.a, inst.b1, inst.b2):
        if not isinstance(s, LinearlyOrderedPoset):
            raise TypeError("expected linearly ordered posets")
    return amalgamate(inst)


# -- classes of ordered structures ------------------------------------------

def naturally_labelled_posets(size: int) -> Iterator[FinitePoset]:
    """All partial orders on range(size) for which 0 < 1 < ... is an extension."""
    pairs = list(combinations(range(size), 2))
    for choice in range(1 << len(pairs)):
        rows = [1 << i for i in range(size)]
        for t, (i, j) in enumerate(pairs):
            if choice >> t & 1:
                rows[i] |= 1 << j
        if tuple(rows) == transitive_closure(rows):
            yield FinitePoset(size, tuple(rows))


class OrderedPosets:
    """All finite linearly ordered posets."""

    name = "ordered_poset"

    def members(self, size: int) -> Iterator[LinearlyOrderedPoset]:
        """Every member on ``size`` elements whose linear order is 0 < 1 < ..."""
        for p in naturally_labelled_posets(size):
            s = LinearlyOrderedPoset(p, tuple(range(size)))
            if self.contains(s):
                yield s

    def contains(self, s) -> bool:
        return isinstance(s, LinearlyOrderedPoset) and s.find_violation() is None


class OrderedChains(OrderedPosets):
    name = "chain"

    def contains(self, s) -> bool:
        return super().contains(s) and all(
            s.poset.comparable(i, j) for i in range(s.n) for j in range(s.n))


def type_key(s) -> tuple:
    return canonical_form(s).encoding


def two_generated(members: Iterable) -> list:
    """Distinct isomorphism types of 2-element induced substructures.

    For relational signatures the substructure generated by two elements is
    just the induced one.  Each type is returned with its order normalized
    to 0 < 1.
    """
    found: dict[tuple, object] = {}
    for s in members:
        for ri in range(s.n):
            for rj in range(ri + 1, s.n):
                t = s.induced((s.order[ri], s.order[rj]))
                key = type_key(t)
                found.setdefault(key, t)
    return list(found.values())


# -- weak triangle condition ------------------------------------------------

@dataclass(frozen=True)
class Triangle:
    sigma: object
    d: object
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class WtcInstance:
    sigmas: tuple
    tau: object
    witnesses: tuple[Triangle, ...]

    def witness_for(self, sigma) -> Triangle:
        key = type_key(sigma)
        for w in self.witnesses:
            if type_key(w.sigma) == key:
                return w
        raise MissingSigma("no witness for this 2-element type")


def _same_type(s, t) -> bool:
    """Isomorphism by embedding search in both directions (no canonical forms)."""
    if s.n != t.n:
        return False
    fwd = next(iter_relational_embeddings(s.relations(), t.relations(), s.n, t.n), None)
    return fwd is not None


def triangle_ok(tri: Triangle, tau, cls=None) -> bool:
    d, x, y, z = tri.d, tri.x, tri.y, tri.z
    if len({x, y, z}) < 3 or not (d.rank[x] < d.rank[y] < d.rank[z]):
        return False
    if cls is not None and not cls.contains(d):
        return False
    return (_same_type(d.induced((x, z)), tri.sigma)
            and _same_type(d.induced((x, y)), tau)
            and _same_type(d.induced((y, z)), tau))


def verify_wtc_instance(inst: WtcInstance, cls=None) -> bool:
    return all(triangle_ok(w, inst.tau, cls) for w in inst.witnesses) and len(inst.witnesses) == len(inst.sigmas)


def wtc_check(sigma_set: Sequence, tau, cls, bound: int = 3) -> WtcInstance:
    """Find, for each σ, a member D and x < y < z with ⟨x,z⟩ ≅ σ and ⟨x,y⟩ ≅ ⟨y,z⟩ ≅ τ.

    Members are searched in increasing size up to ``bound``.  Raises
    :class:`WtcNotFound` naming the first σ without a witness.
    """
    if not sigma_set:
        raise ValueError("Σ must be nonempty")
    tau_key = type_key(tau)
    witnesses = []
    for sigma in sigma_set:
        s_key = type_key(sigma)
        hit = None
        for size in range(3, bound + 1):
            for d in cls.members(size):
                pair_key = {}

                def key(i, j):
                    if (i, j) not in pair_key:
                        pair_key[i, j] = type_key(d.induced((i, j)))
                    return pair_key[i, j]

                for rx, ry, rz in combinations(range(size), 3):
                    x, y, z = d.order[rx], d.order[ry], d.order[rz]
                    if key(x, y) == tau_key and key(y, z) == tau_key and key(x, z) == s_key:
                        hit = Triangle(sigma, d, x, y, z)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            raise WtcNotFound(sigma)
        witnesses.append(hit)
    inst = WtcInstance(tuple(sigma_set), tau, tuple(witnesses))
    if not verify_wtc_instance(inst, cls):
        raise AssertionError("witness failed independent re-verification")
    return inst


# -- the ∇ construction -----------------------------------------------------

@dataclass(frozen=True)
class Nabla:
    structure: object
    middles: tuple[tuple[int, int, int], ...]  # (a_i, y_i, b_i) in the final amalgam


def ordered_pairs(b) -> list[tuple[int, int]]:
    """All (a, c) with a < c in b's linear order, by rank of a then rank of c."""
    o = b.order
    return [(o[i], o[j]) for i in range(b.n) for j in range(i + 1, b.n)]


def nabla(b, wtc: WtcInstance) -> Nabla:
    """Insert a τ-τ middle point between every ordered pair of ``b``.

    One amalgamation per pair, over the 2-element substructure σ_i; b's
    elements keep their indices throughout.
    """
    current = b
    middles = []
    for ai, bi in ordered_pairs(b):
        sigma = b.induced((ai, bi))
        try:
            tri = wtc.witness_for(sigma)
        except MissingSigma:
            raise MissingSigma(f"no witness for the pair ({ai}, {bi})") from None
        step = amalgamate(AmalgamationInstance(sigma, current, tri.d, (ai, bi), (tri.x, tri.z)))
        # earlier middles keep their indices because current is b1
        middles.append((ai, step.g2[tri.y], bi))
        current = step.d
    return Nabla(current, tuple(middles))


def check_nabla(b, result, tau) -> bool:
    """Does ``result`` contain b on its first indices and a τ-τ middle for each pair?

    Searches every candidate middle point instead of trusting the recorded ones.
    """
    idx = tuple(range(b.n))
    sub = result.induced(idx)
    if sub.relations() != b.relations():
        return False
    for a, c in ordered_pairs(b):
        ok = False
        for y in range(result.n):
            if result.rank[a] < result.rank[y] < result.rank[c]:
                if _same_type(result.induced((a, y)), tau) and _same_type(result.induced((y, c)), tau):
                    ok = True
                    break
        if not ok:
            return False
    return True
