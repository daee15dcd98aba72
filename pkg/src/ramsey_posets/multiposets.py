"""Multiposets conforming to a template, optionally with a linear order."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

from .amalgamation import naturally_labelled_posets
from .ordering_property import COUNT_STATE_LIMIT, OpWitnessReport, _Budget, find_avoiding_extension
from .structures import (
    FinitePoset,
    InvalidStructure,
    Violation,
    _check_partial_order,
    _check_permutation,
    _induced_rows,
    _relabel_rows,
    count_linear_extensions,
    iter_linear_extensions,
    transitive_closure,
)


@dataclass(frozen=True)
class Template:
    """A poset T on 0..n-1; relation i must be contained in relation j whenever i ≼ j."""

    poset: FinitePoset

    @classmethod
    def trivial(cls) -> Template:
        return cls(FinitePoset.chain(1))

    @property
    def n(self) -> int:
        return self.poset.n


@dataclass(frozen=True)
class Multiposet:
    n: int
    orders: tuple[tuple[int, ...], ...]  # one row tuple per template element
    order: tuple[int, ...] | None = None  # optional linear order, order[r] = element of rank r

    kind = "multiposet"

    @cached_property
    def rank(self) -> tuple[int, ...]:
        r = [0] * self.n
        for pos, e in enumerate(self.order):
            r[e] = pos
        return tuple(r)

    @cached_property
    def after(self) -> tuple[int, ...]:
        rows = [0] * self.n
        seen = 0
        for e in reversed(self.order):
            rows[e] = seen
            seen |= 1 << e
        return tuple(rows)

    def partial_orders(self) -> tuple[tuple[int, ...], ...]:
        return self.orders

    def relations(self) -> tuple[tuple[int, ...], ...]:
        if self.order is None:
            return self.orders
        return self.orders + (self.after,)

    def leq(self, i: int, j: int, which: int = 0) -> bool:
        return bool(self.orders[which][i] >> j & 1)

    def less(self, i: int, j: int) -> bool:
        return self.rank[i] < self.rank[j]

    def poset(self, which: int) -> FinitePoset:
        return FinitePoset(self.n, self.orders[which])

    def with_order(self, order: Sequence[int] | None) -> Multiposet:
        return Multiposet(self.n, self.orders, None if order is None else tuple(order))

    def unordered(self) -> Multiposet:
        return self.with_order(None)

    def induced(self, elements: Sequence[int]) -> Multiposet:
        orders = tuple(_induced_rows(rows, elements) for rows in self.orders)
        order = None
        if self.order is not None:
            order = tuple(sorted(range(len(elements)), key=lambda t: self.rank[elements[t]]))
        return Multiposet(len(elements), orders, order)

    def relabel(self, perm: Sequence[int]) -> Multiposet:
        orders = tuple(_relabel_rows(rows, perm) for rows in self.orders)
        order = None if self.order is None else tuple(perm[e] for e in self.order)
        return Multiposet(self.n, orders, order)

    def rebuild(self, orders, order) -> Multiposet:
        return Multiposet(len(order), tuple(tuple(r) for r in orders), tuple(order))


def from_pairs(n: int, relations: Sequence[Sequence[tuple[int, int]]], order=None) -> Multiposet:
    """Each relation given by generating pairs (i ⊑ j); reflexive-transitive closure is taken."""
    orders = []
    for pairs in relations:
        rows = [1 << i for i in range(n)]
        for i, j in pairs:
            rows[i] |= 1 << j
        orders.append(transitive_closure(rows))
    return Multiposet(n, tuple(orders), None if order is None else tuple(order))


def fully_incomparable(n: int, relations: int, ordered: bool = True) -> Multiposet:
    rows = tuple(1 << i for i in range(n))
    return Multiposet(n, (rows,) * relations, tuple(range(n)) if ordered else None)


# -- validation -------------------------------------------------------------

def pairwise_consistency_violation(m: Multiposet) -> Violation | None:
    """Distinct a, b and distinct i, j with a ⊏_i b and b ⊏_j a."""
    for i, j in product(range(len(m.orders)), repeat=2):
        if i == j:
            continue
        for a in range(m.n):
            for b in range(m.n):
                if a != b and m.orders[i][a] >> b & 1 and m.orders[j][b] >> a & 1:
                    return Violation("consistency", (a, b, i, j), "a ⊏_i b and b ⊏_j a")
    return None


def union_order(m: Multiposet) -> tuple[int, ...]:
    rows = [0] * m.n
    for r in m.orders:
        for a in range(m.n):
            rows[a] |= r[a]
    return transitive_closure(rows)


def common_extension(m: Multiposet) -> tuple[int, ...] | None:
    """A linear order extending every relation, or None if there is none."""
    rows = union_order(m) if m.n else ()
    for a in range(m.n):
        for b in range(a + 1, m.n):
            if rows[a] >> b & 1 and rows[b] >> a & 1:
                return None
    return next(iter_linear_extensions(FinitePoset(m.n, rows)), ()) if m.n else ()


def has_top(t: Template) -> bool:
    return any(all(t.poset.leq(i, j) for i in range(t.n)) for j in range(t.n))


def validate_multiposet(m: Multiposet, t: Template) -> Violation | None:
    """First violated condition, or None.

    Consistency means the relations admit a common linear extension.  The
    pairwise test (no a ⊏_i b with b ⊏_j a) is checked too; it is a
    consequence of consistency, and it is equivalent to it when T has a
    greatest element, because then every relation sits inside that one.
    """
    if len(m.orders) != t.n:
        return Violation("arity", (len(m.orders), t.n), "one relation per template element")
    for k, rows in enumerate(m.orders):
        if len(rows) != m.n:
            return Violation("shape", (k,), "relation has wrong number of rows")
        v = _check_partial_order(m.n, rows)
        if v is not None:
            return Violation(v.rule, v.witness, f"relation {k}: {v.detail}")
    for i, j in product(range(t.n), repeat=2):
        if i != j and t.poset.leq(i, j):
            extra = [a for a in range(m.n) if m.orders[i][a] & ~m.orders[j][a]]
            if extra:
                return Violation("conformance", (i, j, extra[0]), "relation i is not contained in relation j")
    v = pairwise_consistency_violation(m)
    if v is not None:
        return v
    if common_extension(m) is None:
        return Violation("consistency", (), "no common linear extension")
    if m.order is not None:
        v = _check_permutation(m.order, m.n)
        if v is not None:
            return v
        for k, rows in enumerate(m.orders):
            for a in range(m.n):
                for b in range(m.n):
                    if a != b and rows[a] >> b & 1 and m.rank[a] > m.rank[b]:
                        return Violation("order extension", (a, b, k), "linear order does not extend relation")
    return None


def checked(m: Multiposet, t: Template) -> Multiposet:
    v = validate_multiposet(m, t)
    if v is not None:
        raise InvalidStructure(v)
    return m


# -- the class of ordered multiposets over T --------------------------------

class TemplateClass:
    """Finite ordered multiposets conforming to T and consistent."""

    name = "multiposet"

    def __init__(self, template: Template):
        self.template = template

    def members(self, size: int) -> Iterator[Multiposet]:
        """Members with linear order 0 < 1 < ...; each type appears exactly once."""
        base = list(naturally_labelled_posets(size))
        for combo in product(base, repeat=self.template.n):
            m = Multiposet(size, tuple(p.up for p in combo), tuple(range(size)))
            if self.contains(m):
                yield m

    def contains(self, s) -> bool:
        return (isinstance(s, Multiposet) and s.order is not None
                and validate_multiposet(s, self.template) is None)

    def pair_types(self) -> list[Multiposet]:
        """All 2-element members, i.e. S₂ of the class."""
        return list(self.members(2))


def wtc_tau_for_template(t: Template) -> Multiposet:
    """The ordered pair 0 < 1 with every relation trivial."""
    return fully_incomparable(2, t.n)


# -- ordering property --------------------------------------------------------

def common_extensions(m: Multiposet) -> Iterator[tuple[int, ...]]:
    return iter_linear_extensions(FinitePoset(m.n, union_order(m)))


def verify_op_witness_multi(a: Multiposet, b: Multiposet, t: Template,
                            node_limit: int | None = 5_000_000) -> OpWitnessReport:
    """Does every admissible order on a embed into every admissible order on b?

    Admissible orders are the common linear extensions; embeddings preserve
    and reflect each relation separately and respect the linear orders.
    """
    for s in (a, b):
        v = validate_multiposet(s.unordered(), t)
        if v is not None:
            raise InvalidStructure(v)
    a, b = a.unordered(), b.unordered()
    n_ext_b = count_linear_extensions(FinitePoset(b.n, union_order(b)), COUNT_STATE_LIMIT)
    nodes = 0
    checked_pairs = 0
    for order in common_extensions(a):
        pattern = a.with_order(order)
        stats: dict = {}
        try:
            bad = find_avoiding_extension(pattern, b,
                                          None if node_limit is None else node_limit - nodes, stats)
        except _Budget:
            return OpWitnessReport(a, b, None, checked_pairs if n_ext_b else None, nodes=node_limit)
        nodes += stats["nodes"]
        if bad is not None:
            return OpWitnessReport(a, b, False, checked_pairs + 1 if n_ext_b else None, (order, bad), nodes)
        if n_ext_b:
            checked_pairs += n_ext_b
    return OpWitnessReport(a, b, True, checked_pairs if n_ext_b else None, nodes=nodes)

