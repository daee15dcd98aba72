"""Deciding C ⟶ (B)^A_k by searching for a refuting coloring."""
from __future__ import annotations

import enum
import sys
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .powerset_pi import pi
from .structures import bits, iter_relational_embeddings, to_mask


class Outcome(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class CopySet:
    pattern: object
    host: object
    copies: tuple[tuple[int, ...], ...]  # sorted host indices of each copy

    def __len__(self) -> int:
        return len(self.copies)

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(c) for c in self.copies)


def copies_of(pattern, host) -> CopySet:
    """All substructures of ``host`` isomorphic to ``pattern``, as index sets.

    Found through embeddings and deduplicated by image, in order of first
    appearance.
    """
    seen: dict[int, tuple[int, ...]] = {}
    for m in iter_relational_embeddings(pattern.relations(), host.relations(), pattern.n, host.n):
        key = to_mask(m)
        if key not in seen:
            seen[key] = tuple(sorted(m))
    return CopySet(pattern, host, tuple(seen.values()))


@dataclass
class ArrowVerdict:
    outcome: Outcome
    k: int
    refutation: tuple[int, ...] | None = None  # color of each a-copy, by CopySet index
    a_copies: CopySet | None = None
    b_copies: CopySet | None = None
    nodes: int = 0
    stats: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    def refutation_by_image(self) -> list[tuple[tuple[int, ...], int]]:
        if self.refutation is None:
            return []
        return list(zip(self.a_copies.copies, self.refutation))


def constraint_sets(a_copies: CopySet, b_copies: CopySet) -> list[tuple[int, ...]]:
    """For each b-copy, the indices of the a-copies lying inside it (ascending)."""
    a_masks = a_copies.masks
    if not b_copies.copies:
        return []
    size_a = a_copies.pattern.n
    size_b = len(b_copies.copies[0])
    if comb(size_b, size_a) < len(a_masks):
        # look up each size_a-subset of the b-copy instead of scanning all a-copies
        where = {m: i for i, m in enumerate(a_masks)}
        out = []
        for c in b_copies.copies:
            hits = (where.get(to_mask(sub)) for sub in combinations(c, size_a))
            out.append(tuple(sorted(i for i in hits if i is not None)))
        return out
    return [tuple(i for i, am in enumerate(a_masks) if am & ~bm == 0) for bm in b_copies.masks]


def refutes(coloring: Sequence[int], constraints: Sequence[Sequence[int]], k: int) -> bool:
    """True iff ``coloring`` uses colors < k and leaves no constraint set monochromatic."""
    if any(not 0 <= c < k for c in coloring):
        return False
    for s in constraints:
        if len({coloring[i] for i in s}) < 2:
            return False
    return True


class _Budget(Exception):
    pass


def _search_refutation(n_vars: int, constraints: list[tuple[int, ...]], k: int,
                       node_limit: int | None, deadline: float | None):
    """Backtracking for a coloring with no monochromatic constraint set.

    Returns (coloring or None, nodes).  Raises _Budget on resource exhaustion.
    """
    if any(len(s) < 2 for s in constraints):
        return None, 0
    var_cons: list[list[int]] = [[] for _ in range(n_vars)]
    for ci, s in enumerate(constraints):
        for v in s:
            var_cons[v].append(ci)
    # most constrained first; ties by index keep the search deterministic
    order = sorted(range(n_vars), key=lambda v: (-len(var_cons[v]), v))
    position = {v: p for p, v in enumerate(order)}
    color = [-1] * n_vars
    all_colors = (1 << k) - 1
    domain = [all_colors] * n_vars
    nodes = 0

    def forbidden_by(ci: int) -> tuple[int, int] | None:
        """If constraint ci has one free var and the rest share a color, return (var, color)."""
        free = -1
        shared = -1
        for v in constraints[ci]:
            c = color[v]
            if c < 0:
                if free >= 0:
                    return None
                free = v
            elif shared < 0:
                shared = c
            elif c != shared:
                return None
        if free < 0:
            return (-1, shared)
        return (free, shared)

    def assign(v: int, c: int, trail: list) -> bool:
        stack = [(v, c)]
        while stack:
            v, c = stack.pop()
            if color[v] >= 0:
                if color[v] != c:
                    return False
                continue
            if not domain[v] >> c & 1:
                return False
            color[v] = c
            trail.append(("c", v))
            for ci in var_cons[v]:
                hit = forbidden_by(ci)
                if hit is None:
                    continue
                w, bad = hit
                if w < 0:
                    return False
                if domain[w] >> bad & 1:
                    trail.append(("d", w, domain[w]))
                    domain[w] &= ~(1 << bad)
                    if domain[w] == 0:
                        return False
                    if domain[w] & (domain[w] - 1) == 0:
                        stack.append((w, domain[w].bit_length() - 1))
        return True

    def undo(trail: list):
        for entry in reversed(trail):
            if entry[0] == "c":
                color[entry[1]] = -1
            else:
                domain[entry[1]] = entry[2]

    def solve(depth: int, used: int) -> bool:
        nonlocal nodes
        while depth < n_vars and color[order[depth]] >= 0:
            depth += 1
        if depth == n_vars:
            return True
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise _Budget
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _Budget
        v = order[depth]
        # colors are interchangeable until used: only try one fresh color
        for c in range(min(used + 1, k)):
            if not domain[v] >> c & 1:
                continue
            trail: list = []
            if assign(v, c, trail):
                new_used = max(used, c + 1, max((color[w] + 1 for w in order), default=0))
                if solve(depth + 1, new_used):
                    return True
            undo(trail)
        return False

    # one frame per variable: deep searches need more than the default limit
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, n_vars + 500))
    try:
        found = solve(0, 0)
    finally:
        sys.setrecursionlimit(old_limit)
    if not found:
        return None, nodes
    return tuple(max(c, 0) for c in color), nodes


SAT_SOLVER = "cadical195"
SAT_SLICE = 20_000  # conflicts between budget checks
BACKENDS = ("auto", "backtrack", "sat")


def sat_available() -> bool:
    try:
        import pysat.solvers  # noqa: F401
    except ImportError:
        return False
    return True


def _sat_refutation(n_vars: int, constraints: list[tuple[int, ...]], k: int,
                    node_limit: int | None, deadline: float | None):
    """The same search handed to a CDCL solver; ``node_limit`` caps conflicts."""
    from pysat.solvers import Solver

    if any(len(s) < 2 for s in constraints):
        return None, 0
    if n_vars == 0:
        return (), 0
    if node_limit is not None and node_limit <= 0:
        raise _Budget
    if k == 2:
        lit = lambda v, col: (v + 1) if col else -(v + 1)  # true means color 1
        clauses = [[lit(v, 0) for v in s] for s in constraints]
        clauses += [[lit(v, 1) for v in s] for s in constraints]
        clauses.append([lit(0, 0)])  # colors are interchangeable
    else:
        lit = lambda v, col: v * k + col + 1
        clauses = [[lit(v, col) for col in range(k)] for v in range(n_vars)]
        clauses += [[-lit(v, c1), -lit(v, c2)] for v in range(n_vars) for c1, c2 in combinations(range(k), 2)]
        clauses += [[-lit(v, col) for v in s] for s in constraints for col in range(k)]
        clauses.append([lit(0, 0)])
    with Solver(name=SAT_SOLVER, bootstrap_with=clauses) as solver:
        # run in slices of conflicts so both budgets can be checked in between;
        # learned clauses carry over from one slice to the next
        nodes = 0
        while True:
            step = SAT_SLICE if node_limit is None else min(SAT_SLICE, node_limit - nodes)
            if step <= 0 or (deadline is not None and time.monotonic() > deadline):
                raise _Budget
            solver.conf_budget(step)
            found = solver.solve_limited()
            nodes = solver.accum_stats().get("conflicts", 0)
            if found is not None:
                break
        if not found:
            return None, nodes
        model = set(x for x in solver.get_model() if x > 0)
    if k == 2:
        return tuple(1 if v + 1 in model else 0 for v in range(n_vars)), nodes
    return tuple(next(col for col in range(k) if lit(v, col) in model) for v in range(n_vars)), nodes


def check_arrow(c, a, b, k: int, node_limit: int | None = None, time_limit: float | None = None,
                a_copies: CopySet | None = None, b_copies: CopySet | None = None,
                backend: str = "auto") -> ArrowVerdict:
    """Decide whether c ⟶ (b)^a_k.

    The arrow fails exactly when some k-coloring of the a-copies in c leaves
    every b-copy with at least two colors.  That coloring is searched for by
    backtracking with forward checking, or by a SAT solver when ``backend``
    is "sat" ("auto" picks the solver if python-sat is installed).  When
    ``node_limit`` (search nodes, or solver conflicts) or ``time_limit``
    (seconds) runs out the outcome is UNKNOWN.
    """
    if k < 2:
        raise ValueError("need at least two colors")
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {', '.join(BACKENDS)}")
    if backend == "auto":
        backend = "sat" if sat_available() else "backtrack"
    search = _sat_refutation if backend == "sat" else _search_refutation
    a_copies = a_copies or copies_of(a, c)
    b_copies = b_copies or copies_of(b, c)
    cons = constraint_sets(a_copies, b_copies)
    deadline = time.monotonic() + time_limit if time_limit is not None else None
    stats = {"a_copies": len(a_copies), "b_copies": len(b_copies), "backend": backend}
    try:
        coloring, nodes = search(len(a_copies), cons, k, node_limit, deadline)
    except _Budget:
        return ArrowVerdict(Outcome.UNKNOWN, k, None, a_copies, b_copies, node_limit or 0, stats)
    if coloring is None:
        return ArrowVerdict(Outcome.HOLDS, k, None, a_copies, b_copies, nodes, stats)
    if not refutes(coloring, cons, k):
        raise AssertionError("refutation search returned a coloring that does not refute")
    return ArrowVerdict(Outcome.FAILS, k, coloring, a_copies, b_copies, nodes, stats)


def verify_refutation(verdict: ArrowVerdict) -> bool:
    """Re-check a FAILS verdict from the copy images alone."""
    if verdict.outcome is not Outcome.FAILS:
        return False
    a_sets = [frozenset(s) for s in verdict.a_copies.copies]
    for bset in verdict.b_copies.copies:
        inside = frozenset(bset)
        seen = {verdict.refutation[i] for i, s in enumerate(a_sets) if s <= inside}
        if len(seen) < 2:
            return False
    return all(0 <= x < verdict.k for x in verdict.refutation)


class NotFoundWithinBound(Exception):
    def __init__(self, n_max: int, last: ArrowVerdict | None):
        super().__init__(f"no n <= {n_max} with pi(n) arrowing the target")
        self.n_max = n_max
        self.last = last


@dataclass
class PiSearch:
    n: int
    verdict: ArrowVerdict
    tried: list[tuple[int, str]]


def find_min_pi_arrow(a, b, k: int, n_max: int, node_limit: int | None = None,
                      backend: str = "auto") -> PiSearch:
    """Smallest n <= n_max with Π_n ⟶ (b)^a_k.

    An UNKNOWN verdict at some n leaves minimality undecided, so the search
    stops there and reports it through :class:`NotFoundWithinBound`.
    """
    tried = []
    last = None
    for n in range(n_max + 1):
        host = pi(n)
        verdict = check_arrow(host, a, b, k, node_limit=node_limit, backend=backend)
        tried.append((n, verdict.outcome.value))
        last = verdict
        if verdict.outcome is Outcome.HOLDS:
            return PiSearch(n, verdict, tried)
        if verdict.outcome is Outcome.UNKNOWN:
            break
    raise NotFoundWithinBound(n_max, last)
