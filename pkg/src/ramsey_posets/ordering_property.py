"""Ordering-property witnesses for linearly ordered posets.

A poset W witnesses the ordering property for A when every admissible
linear order on A embeds into every admissible linear order on W.  For a
linearly ordered A only its own order is considered (the primed form).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrows import CopySet, NotFoundWithinBound, check_arrow, find_min_pi_arrow
from .powerset_pi import pi
from .structures import (
    FinitePoset,
    LinearlyOrderedPoset,
    count_linear_extensions,
    iter_linear_extensions,
    iter_relational_embeddings,
)

DEFAULT_NODE_LIMIT = 5_000_000
# downset layers kept while counting the pairs a verification covered
COUNT_STATE_LIMIT = 100_000


@dataclass
class OpWitnessReport:
    base: object
    witness: object
    verified: bool | None  # None: search budget ran out
    checked_pairs: int | None  # pairs covered; None when the host has too many extensions to count
    counterexample: tuple | None = None  # (order on base, order on witness)
    nodes: int = 0
    arrow_n: int | None = None


class _Budget(Exception):
    pass


def find_avoiding_extension(pattern: LinearlyOrderedPoset, host, node_limit: int | None = None,
                            stats: dict | None = None) -> tuple[int, ...] | None:
    """A linear extension of ``host`` containing no copy of ``pattern``, or None.

    ``host`` is anything with ``partial_orders()`` and ``relations()`` whose
    embeddings should respect every partial order (posets, multiposets).
    Prefixes of linear extensions are grown one element at a time; a prefix
    is abandoned as soon as it places some copy of the pattern in the
    pattern's order, since every completion then contains that copy.
    """
    host_orders = host.partial_orders() if hasattr(host, "partial_orders") else host.relations()
    pat_orders = pattern.partial_orders()
    n = len(host_orders[0])
    embeddings = list(iter_relational_embeddings(pat_orders, host_orders, pattern.n, n))
    # each embedding as the host elements listed in pattern order
    sequences = [tuple(m[e] for e in pattern.order) for m in embeddings]
    k = pattern.n
    strict_down = [0] * n
    for rows in host_orders:
        for i in range(n):
            for j in range(n):
                if i != j and rows[i] >> j & 1:
                    strict_down[j] |= 1 << i
    watching: list[list[int]] = [[] for _ in range(n)]
    for idx, seq in enumerate(sequences):
        for v in seq:
            watching[v].append(idx)
    # progress[idx]: how many leading elements of the sequence are placed; -1 once broken
    progress = [0] * len(sequences)
    prefix: list[int] = []
    nodes = 0

    def place(v: int, trail: list) -> bool:
        """Place v; return True if this completes a copy."""
        done = False
        for idx in watching[v]:
            p = progress[idx]
            if p < 0:
                continue
            trail.append((idx, p))
            if sequences[idx][p] == v:
                progress[idx] = p + 1
                if p + 1 == k:
                    done = True
            else:
                progress[idx] = -1
        return done

    def dfs(placed: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if len(prefix) == n:
            return True
        for v in range(n):
            if placed >> v & 1 or strict_down[v] & ~placed:
                continue
            trail: list = []
            completed = place(v, trail)
            if not completed:
                prefix.append(v)
                if dfs(placed | 1 << v):
                    return True
                prefix.pop()
            for idx, p in reversed(trail):
                progress[idx] = p
        return False

    if k == 0:
        return None
    try:
        found = dfs(0)
    finally:
        if stats is not None:
            stats["nodes"] = nodes
    return tuple(prefix) if found else None


def _base_orders(base) -> list[LinearlyOrderedPoset]:
    if isinstance(base, LinearlyOrderedPoset):
        return [base]
    return [LinearlyOrderedPoset(base, o) for o in iter_linear_extensions(base)]


def verify_op_witness(base, witness: FinitePoset, node_limit: int | None = DEFAULT_NODE_LIMIT) -> OpWitnessReport:
    """Exhaustively decide whether ``witness`` is an ordering-property witness for ``base``.

    ``base`` may be a poset (all of its linear extensions are checked) or a
    linearly ordered poset (only its own order).  Returns verified=None if
    ``node_limit`` search nodes do not suffice.
    """
    wpos = witness.poset if isinstance(witness, LinearlyOrderedPoset) else witness
    orders = _base_orders(base)
    host_ext = count_linear_extensions(wpos, COUNT_STATE_LIMIT)
    nodes = 0
    checked = 0
    for a in orders:
        stats: dict = {}
        try:
            bad = find_avoiding_extension(a, wpos, None if node_limit is None else node_limit - nodes, stats)
        except _Budget:
            return OpWitnessReport(base, witness, None, checked if host_ext else None, nodes=node_limit)
        nodes += stats["nodes"]
        if bad is not None:
            return OpWitnessReport(base, witness, False, checked + 1 if host_ext else None, (a.order, bad), nodes)
        if host_ext:
            checked += host_ext
    return OpWitnessReport(base, witness, True, checked if host_ext else None, nodes=nodes)


def verify_op_witness_by_enumeration(base, witness: FinitePoset, max_pairs: int = 200_000) -> OpWitnessReport:
    """Same question, answered by listing every pair of linear orders."""
    wpos = witness.poset if isinstance(witness, LinearlyOrderedPoset) else witness
    orders = _base_orders(base)
    count = count_linear_extensions(wpos, COUNT_STATE_LIMIT)
    if count is None or len(orders) * count > max_pairs:
        return OpWitnessReport(base, witness, None, 0)
    checked = 0
    for w_order in iter_linear_extensions(wpos):
        host = LinearlyOrderedPoset(wpos, w_order)
        for a in orders:
            checked += 1
            if next(iter_relational_embeddings(a.relations(), host.relations(), a.n, host.n), None) is None:
                return OpWitnessReport(base, witness, False, checked, (a.order, w_order))
    return OpWitnessReport(base, witness, True, checked)


def comparable_pair(b: LinearlyOrderedPoset) -> tuple[int, int] | None:
    """First x ⊏ y with x of least rank, then y of least rank."""
    for x in b.order:
        for y in b.order:
            if x != y and b.poset.leq(x, y):
                return x, y
    return None


def build_b1(b: LinearlyOrderedPoset, x: int, y: int) -> LinearlyOrderedPoset:
    """Add a fresh element z (index n), incomparable to everything, right after x."""
    if x == y or not b.poset.leq(x, y):
        raise ValueError(f"need x strictly below y; use the antichain branch when none exists")
    n = b.n
    up = b.poset.up + (1 << n,)
    order = list(b.order)
    order.insert(b.rank[x] + 1, n)
    return LinearlyOrderedPoset(FinitePoset(n + 1, up), tuple(order))


def op_witness_via_arrow(b: LinearlyOrderedPoset, n_max: int = 5, node_limit: int | None = DEFAULT_NODE_LIMIT,
                         arrow_node_limit: int | None = None, backend: str = "auto") -> OpWitnessReport:
    """Build a witness for ``b`` from the least Π_N arrowing b₁ and certify it.

    Antichains witness themselves.  Otherwise b₁ adds a point between the
    first comparable pair, N is the least n with Π_n ⟶ (b₁)^{2-antichain}_2
    and the poset of Π_N is checked directly with :func:`verify_op_witness`.
    """
    if b.poset.is_antichain():
        report = verify_op_witness(b, b.poset, node_limit)
        return report
    x, y = comparable_pair(b)
    b1 = build_b1(b, x, y)
    found = find_min_pi_arrow(LinearlyOrderedPoset.antichain(2), b1, 2, n_max, node_limit=arrow_node_limit,
                              backend=backend)
    candidate = pi(found.n).poset
    report = verify_op_witness(b, candidate, node_limit)
    report.arrow_n = found.n
    return report


def sierpinski_coloring(host: LinearlyOrderedPoset, second_order: Sequence[int],
                        pairs: CopySet | Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Color a 2-element copy 0 if host's order and ``second_order`` agree on it, else 1."""
    if sorted(second_order) != list(range(host.n)):
        raise ValueError("second_order must be a permutation of the host's elements")
    rank2 = [0] * host.n
    for pos, e in enumerate(second_order):
        rank2[e] = pos
    copies = pairs.copies if isinstance(pairs, CopySet) else pairs
    out = []
    for c in copies:
        p, q = c
        out.append(0 if (host.rank[p] < host.rank[q]) == (rank2[p] < rank2[q]) else 1)
    return tuple(out)
