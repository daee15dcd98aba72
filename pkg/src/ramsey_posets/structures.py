"""Finite posets, linearly ordered posets and lattices.

Elements are always the integers ``0..n-1``.  Binary relations are stored
row-wise as Python ints used as bitsets: bit ``j`` of ``rows[i]`` is set iff
``(i, j)`` is in the relation.  Every structure exposes ``relations()``, the
tuple of such row tuples that embeddings must preserve and reflect; the
generic search code below only ever looks at that.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence


class InvalidStructure(ValueError):
    """Raised when a constructor is handed tables that break an invariant."""

    def __init__(self, violation: "Violation"):
        super().__init__(str(violation))
        self.violation = violation


class NotALattice(ValueError):
    def __init__(self, pair: tuple[int, int], missing: str):
        super().__init__(f"elements {pair[0]} and {pair[1]} have no {missing}")
        self.pair = pair
        self.missing = missing


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple
    detail: str = ""

    def __str__(self) -> str:
        msg = f"{self.rule} violated at {self.witness}"
        return f"{msg}: {self.detail}" if self.detail else msg


# -- bitset helpers ---------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(items: Iterable[int]) -> int:
    m = 0
    for i in items:
        m |= 1 << i
    return m


def transpose(rows: Sequence[int], n: int) -> tuple[int, ...]:
    cols = [0] * n
    for i, r in enumerate(rows):
        for j in bits(r):
            cols[j] |= 1 << i
    return tuple(cols)


def transitive_closure(rows: Sequence[int]) -> tuple[int, ...]:
    """Warshall's algorithm on bitset rows."""
    rows = list(rows)
    for k in range(len(rows)):
        kbit = 1 << k
        rk = rows[k]
        for i in range(len(rows)):
            if rows[i] & kbit:
                rows[i] |= rk
    return tuple(rows)


def _check_partial_order(n: int, rows: Sequence[int]) -> Violation | None:
    if len(rows) != n:
        return Violation("shape", (n, len(rows)), "expected one row per element")
    full = (1 << n) - 1
    for i in range(n):
        if rows[i] & ~full:
            return Violation("shape", (i,), "row refers to a missing element")
    for i in range(n):
        if not rows[i] >> i & 1:
            return Violation("reflexivity", (i,))
    for i in range(n):
        for j in bits(rows[i]):
            if j != i and rows[j] >> i & 1:
                return Violation("antisymmetry", (min(i, j), max(i, j)))
    for i in range(n):
        for j in bits(rows[i]):
            missing = rows[j] & ~rows[i]
            if missing:
                k = next(bits(missing))
                return Violation("transitivity", (i, j, k))
    return None


def _check_permutation(order: Sequence[int], n: int) -> Violation | None:
    if len(order) != n or sorted(order) != list(range(n)):
        return Violation("permutation", tuple(order), "order must list every element once")
    return None


# -- structures -------------------------------------------------------------

@dataclass(frozen=True)
class FinitePoset:
    n: int
    up: tuple[int, ...]  # up[i] has bit j iff i ⊑ j

    kind = "poset"

    @classmethod
    def from_matrix(cls, leq: Sequence[Sequence[bool]], check: bool = True) -> FinitePoset:
        rows = tuple(to_mask(j for j, v in enumerate(row) if v) for row in leq)
        p = cls(len(rows), rows)
        if check:
            v = p.find_violation()
            if v is not None:
                raise InvalidStructure(v)
        return p

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> FinitePoset:
        """Reflexive-transitive closure of ``pairs``; raises if that is not antisymmetric."""
        rows = [1 << i for i in range(n)]
        for a, b in pairs:
            rows[a] |= 1 << b
        p = cls(n, transitive_closure(rows))
        v = p.find_violation()
        if v is not None:
            raise InvalidStructure(v)
        return p

    @classmethod
    def chain(cls, n: int) -> FinitePoset:
        return cls(n, tuple(((1 << n) - 1) & ~((1 << i) - 1) for i in range(n)))

    @classmethod
    def antichain(cls, n: int) -> FinitePoset:
        return cls(n, tuple(1 << i for i in range(n)))

    def find_violation(self) -> Violation | None:
        return _check_partial_order(self.n, self.up)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def comparable(self, i: int, j: int) -> bool:
        return bool((self.up[i] | self.down[i]) >> j & 1)

    @cached_property
    def down(self) -> tuple[int, ...]:
        return transpose(self.up, self.n)

    def matrix(self) -> list[list[bool]]:
        return [[bool(r >> j & 1) for j in range(self.n)] for r in self.up]

    def is_antichain(self) -> bool:
        return all(r == 1 << i for i, r in enumerate(self.up))

    def strict_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.up[i]) if i != j]

    def relations(self) -> tuple[tuple[int, ...], ...]:
        return (self.up,)

    def dual(self) -> FinitePoset:
        return FinitePoset(self.n, self.down)

    def induced(self, elements: Sequence[int]) -> FinitePoset:
        return FinitePoset(len(elements), _induced_rows(self.up, elements))

    def relabel(self, perm: Sequence[int]) -> FinitePoset:
        return FinitePoset(self.n, _relabel_rows(self.up, perm))


@dataclass(frozen=True)
class LinearlyOrderedPoset:
    poset: FinitePoset
    order: tuple[int, ...]  # order[r] is the element of rank r

    kind = "ordered_poset"

    @classmethod
    def chain(cls, n: int) -> LinearlyOrderedPoset:
        return cls(FinitePoset.chain(n), tuple(range(n)))

    @classmethod
    def antichain(cls, n: int) -> LinearlyOrderedPoset:
        return cls(FinitePoset.antichain(n), tuple(range(n)))

    @classmethod
    def checked(cls, poset: FinitePoset, order: Sequence[int]) -> LinearlyOrderedPoset:
        s = cls(poset, tuple(order))
        v = s.find_violation()
        if v is not None:
            raise InvalidStructure(v)
        return s

    @property
    def n(self) -> int:
        return self.poset.n

    @cached_property
    def rank(self) -> tuple[int, ...]:
        r = [0] * len(self.order)
        for pos, e in enumerate(self.order):
            r[e] = pos
        return tuple(r)

    @cached_property
    def after(self) -> tuple[int, ...]:
        """Strict linear order rows: bit j of after[i] iff i < j."""
        rows = [0] * self.n
        seen = 0
        for e in reversed(self.order):
            rows[e] = seen
            seen |= 1 << e
        return tuple(rows)

    def find_violation(self) -> Violation | None:
        v = self.poset.find_violation()
        if v is not None:
            return v
        v = _check_permutation(self.order, self.n)
        if v is not None:
            return v
        for i, j in self.poset.strict_pairs():
            if self.rank[i] > self.rank[j]:
                return Violation("order extension", (i, j), "i ⊑ j but j precedes i")
        return None

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq(i, j)

    def less(self, i: int, j: int) -> bool:
        return self.rank[i] < self.rank[j]

    def relations(self) -> tuple[tuple[int, ...], ...]:
        return (self.poset.up, self.after)

    def induced(self, elements: Sequence[int]) -> LinearlyOrderedPoset:
        """Substructure on ``elements``; new index t stands for ``elements[t]``."""
        sub = self.poset.induced(elements)
        order = tuple(sorted(range(len(elements)), key=lambda t: self.rank[elements[t]]))
        return LinearlyOrderedPoset(sub, order)

    def relabel(self, perm: Sequence[int]) -> LinearlyOrderedPoset:
        return LinearlyOrderedPoset(self.poset.relabel(perm), tuple(perm[e] for e in self.order))

    def normalized(self) -> LinearlyOrderedPoset:
        """Isomorphic copy whose linear order is 0 < 1 < ... < n-1."""
        return self.relabel(self.rank)

    # hooks shared with multiposets by the amalgamation code
    def partial_orders(self) -> tuple[tuple[int, ...], ...]:
        return (self.poset.up,)

    def rebuild(self, orders, order) -> LinearlyOrderedPoset:
        return LinearlyOrderedPoset(FinitePoset(len(order), tuple(orders[0])), tuple(order))


@dataclass(frozen=True)
class FiniteLattice:
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]

    kind = "lattice"

    @classmethod
    def from_tables(cls, meet, join, check: bool = True) -> FiniteLattice:
        lat = cls(tuple(map(tuple, meet)), tuple(map(tuple, join)))
        if check:
            v = lat.find_violation()
            if v is not None:
                raise InvalidStructure(v)
        return lat

    @property
    def n(self) -> int:
        return len(self.meet)

    def find_violation(self) -> Violation | None:
        n = self.n
        for name, t in (("meet", self.meet), ("join", self.join)):
            if len(t) != n or any(len(row) != n for row in t):
                return Violation("shape", (name,), "tables must be n×n")
            for i, j in product(range(n), repeat=2):
                if not 0 <= t[i][j] < n:
                    return Violation("shape", (name, i, j), "entry out of range")
        for name, t in (("meet", self.meet), ("join", self.join)):
            for a in range(n):
                if t[a][a] != a:
                    return Violation(f"{name} idempotence", (a,))
            for a, b in product(range(n), repeat=2):
                if t[a][b] != t[b][a]:
                    return Violation(f"{name} commutativity", (a, b))
            for a, b, c in product(range(n), repeat=3):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    return Violation(f"{name} associativity", (a, b, c))
        m, j = self.meet, self.join
        for a, b in product(range(n), repeat=2):
            if m[a][j[a][b]] != a or j[a][m[a][b]] != a:
                return Violation("absorption", (a, b))
        return None

    @cached_property
    def poset(self) -> FinitePoset:
        return rel(self)

    def leq(self, i: int, j: int) -> bool:
        return self.meet[i][j] == i

    def relations(self) -> tuple[tuple[int, ...], ...]:
        return self.poset.relations()

    def relabel(self, perm: Sequence[int]) -> FiniteLattice:
        n = self.n
        meet = [[0] * n for _ in range(n)]
        join = [[0] * n for _ in range(n)]
        for a, b in product(range(n), repeat=2):
            meet[perm[a]][perm[b]] = perm[self.meet[a][b]]
            join[perm[a]][perm[b]] = perm[self.join[a][b]]
        return FiniteLattice(tuple(map(tuple, meet)), tuple(map(tuple, join)))


def _induced_rows(rows: Sequence[int], elements: Sequence[int]) -> tuple[int, ...]:
    out = []
    for e in elements:
        r = rows[e]
        out.append(to_mask(t for t, f in enumerate(elements) if r >> f & 1))
    return tuple(out)


def _relabel_rows(rows: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(rows)
    for i, r in enumerate(rows):
        out[perm[i]] = to_mask(perm[j] for j in bits(r))
    return tuple(out)


def validate(structure) -> Violation | None:
    """First violated invariant of ``structure``, or None when it is well formed."""
    return structure.find_violation()


# -- maps and embeddings ----------------------------------------------------

MODES = ("order", "ordered-order", "lattice")


@dataclass(frozen=True)
class StructureMap:
    source: object
    target: object
    map: tuple[int, ...]
    mode: str

    def __call__(self, i: int) -> int:
        return self.map[i]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def find_violation(self) -> Violation | None:
        return embedding_violation(self.source, self.target, self.map, self.mode)

    def is_valid(self) -> bool:
        return self.find_violation() is None

    def then(self, other: StructureMap) -> StructureMap:
        """``other ∘ self``."""
        return StructureMap(self.source, other.target, tuple(other.map[i] for i in self.map), self.mode)


def embedding_violation(source, target, mapping: Sequence[int], mode: str) -> Violation | None:
    """Check a map pointwise against the definition of an embedding.

    Only uses ``leq``/``less``/``meet``/``join``, so it works against implicit
    targets such as :class:`~ramsey_posets.powerset_pi.PowersetPi`.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    n = source.n
    if len(mapping) != n:
        return Violation("domain", (len(mapping), n), "map length differs from source size")
    for i in range(n):
        if not 0 <= mapping[i] < target.n:
            return Violation("codomain", (i, mapping[i]))
    if len(set(mapping)) != n:
        return Violation("injectivity", tuple(mapping))
    for i, j in product(range(n), repeat=2):
        if source.leq(i, j) != target.leq(mapping[i], mapping[j]):
            return Violation("order preservation", (i, j))
    if mode == "ordered-order":
        for i, j in product(range(n), repeat=2):
            if source.less(i, j) != target.less(mapping[i], mapping[j]):
                return Violation("linear order preservation", (i, j))
    elif mode == "lattice":
        for i, j in product(range(n), repeat=2):
            if mapping[source.meet[i][j]] != target.meet[mapping[i]][mapping[j]]:
                return Violation("meet preservation", (i, j))
            if mapping[source.join[i][j]] != target.join[mapping[i]][mapping[j]]:
                return Violation("join preservation", (i, j))
    return None


def iter_relational_embeddings(src_rels, dst_rels, n_src: int, n_dst: int) -> Iterator[tuple[int, ...]]:
    """All injective maps preserving and reflecting every paired relation.

    Pattern elements are placed in index order and host candidates are tried
    in increasing index order, so maps come out lexicographically sorted.
    """
    if n_src > n_dst:
        return
    if n_src == 0:
        yield ()
        return
    src_cols = [transpose(r, n_src) for r in src_rels]
    dst_cols = [transpose(r, n_dst) for r in dst_rels]
    full = (1 << n_dst) - 1
    # host elements with a loop in each relation
    loops = [to_mask(v for v in range(n_dst) if r[v] >> v & 1) for r in dst_rels]
    base = []
    for p in range(n_src):
        c = full
        for k, r in enumerate(src_rels):
            c &= loops[k] if r[p] >> p & 1 else ~loops[k]
        base.append(c & full)

    img = [0] * n_src

    def candidates(p: int, used: int) -> int:
        c = base[p] & ~used
        for q in range(p):
            w = img[q]
            for k in range(len(src_rels)):
                if src_rels[k][q] >> p & 1:
                    c &= dst_rels[k][w]
                else:
                    c &= ~dst_rels[k][w]
                if src_cols[k][q] >> p & 1:
                    c &= dst_cols[k][w]
                else:
                    c &= ~dst_cols[k][w]
            if not c:
                break
        return c

    def extend(p: int, used: int):
        for v in bits(candidates(p, used)):
            img[p] = v
            if p + 1 == n_src:
                yield tuple(img)
            else:
                yield from extend(p + 1, used | 1 << v)

    yield from extend(0, 0)


def _mode_relations(a, b, mode: str):
    if mode == "order":
        pa = a.poset if hasattr(a, "poset") else a
        pb = b.poset if hasattr(b, "poset") else b
        return pa.relations(), pb.relations()
    if mode == "ordered-order":
        if not (isinstance(a, LinearlyOrderedPoset) and isinstance(b, LinearlyOrderedPoset)):
            raise TypeError("mode 'ordered-order' needs two linearly ordered posets")
        return a.relations(), b.relations()
    if mode == "lattice":
        if not (isinstance(a, FiniteLattice) and isinstance(b, FiniteLattice)):
            raise TypeError("mode 'lattice' needs two lattices")
        return a.relations(), b.relations()
    raise ValueError(f"unknown mode {mode!r}")


def iter_embeddings(a, b, mode: str) -> Iterator[StructureMap]:
    src, dst = _mode_relations(a, b, mode)
    for m in iter_relational_embeddings(src, dst, a.n, b.n):
        if mode == "lattice" and not _preserves_operations(a, b, m):
            continue
        yield StructureMap(a, b, m, mode)


def enumerate_embeddings(a, b, mode: str) -> list[StructureMap]:
    """Every embedding of ``a`` into ``b`` of the given mode, lexicographically."""
    return list(iter_embeddings(a, b, mode))


def embeds(a, b, mode: str) -> bool:
    return next(iter_embeddings(a, b, mode), None) is not None


def _preserves_operations(a: FiniteLattice, b: FiniteLattice, m: Sequence[int]) -> bool:
    n = a.n
    for i in range(n):
        for j in range(i + 1, n):
            if m[a.meet[i][j]] != b.meet[m[i]][m[j]] or m[a.join[i][j]] != b.join[m[i]][m[j]]:
                return False
    return True


# -- linear extensions ------------------------------------------------------

def iter_linear_extensions(p: FinitePoset) -> Iterator[tuple[int, ...]]:
    """Linear extensions of ``p`` as permutations, in lexicographic order."""
    n = p.n
    strict_down = [d & ~(1 << i) for i, d in enumerate(p.down)]
    seq = [0] * n

    def extend(pos: int, placed: int):
        if pos == n:
            yield tuple(seq)
            return
        for e in range(n):
            if not placed >> e & 1 and strict_down[e] & ~placed == 0:
                seq[pos] = e
                yield from extend(pos + 1, placed | 1 << e)

    yield from extend(0, 0)


def linear_extensions(p: FinitePoset) -> list[LinearlyOrderedPoset]:
    return [LinearlyOrderedPoset(p, order) for order in iter_linear_extensions(p)]


def count_linear_extensions(p: FinitePoset, max_states: int | None = None) -> int | None:
    """Counted by dynamic programming over downsets rather than by listing.

    Once more than ``max_states`` downsets have been visited in total the
    count is abandoned and None is returned.
    """
    strict_down = [d & ~(1 << i) for i, d in enumerate(p.down)]
    counts = {0: 1}
    seen = 1
    for _ in range(p.n):
        nxt: dict[int, int] = {}
        for placed, c in counts.items():
            for e in range(p.n):
                if not placed >> e & 1 and strict_down[e] & ~placed == 0:
                    key = placed | 1 << e
                    nxt[key] = nxt.get(key, 0) + c
        seen += len(nxt)
        if max_states is not None and seen > max_states:
            return None
        counts = nxt
    return sum(counts.values())


# -- canonical form and automorphisms --------------------------------------

@dataclass(frozen=True)
class CanonicalForm:
    encoding: tuple
    relabeling: tuple[int, ...]  # relabeling[i] is the canonical label of element i


def _refine(colors: list[int], rels, cols) -> list[int]:
    n = len(colors)
    while True:
        sigs = []
        for v in range(n):
            nb = []
            for k in range(len(rels)):
                nb.append(tuple(sorted(colors[w] for w in bits(rels[k][v]))))
                nb.append(tuple(sorted(colors[w] for w in bits(cols[k][v]))))
            sigs.append((colors[v], tuple(nb)))
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return new
        colors = new


def _initial_colors(rels, cols, n: int) -> list[int]:
    sigs = []
    for v in range(n):
        sigs.append(tuple(
            (r[v] >> v & 1, bin(r[v]).count("1"), bin(c[v]).count("1"))
            for r, c in zip(rels, cols)
        ))
    ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return [ranking[s] for s in sigs]


def _twins(u: int, v: int, rels, cols) -> bool:
    """True when swapping u and v is an automorphism."""
    mask = ~(1 << u | 1 << v)
    for r, c in zip(rels, cols):
        if (r[u] ^ r[v]) & mask or (c[u] ^ c[v]) & mask:
            return False
        if (r[u] >> u & 1) != (r[v] >> v & 1) or (r[u] >> v & 1) != (r[v] >> u & 1):
            return False
    return True


def canonical_labeling(rels, n: int) -> tuple[tuple, tuple[int, ...]]:
    """Smallest relabeled relation encoding over an individualize-refine search tree."""
    if n == 0:
        return (), ()
    cols = [transpose(r, n) for r in rels]
    best: list = [None, None]

    def leaf(colors: list[int]):
        perm = tuple(colors)
        enc = tuple(_relabel_rows(r, perm) for r in rels)
        if best[0] is None or enc < best[0]:
            best[0], best[1] = enc, perm

    def search(colors: list[int]):
        colors = _refine(colors, rels, cols)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            leaf(colors)
            return
        tried: list[int] = []
        for v in cells[target]:
            if any(_twins(u, v, rels, cols) for u in tried):
                continue
            tried.append(v)
            search([2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)])

    search(_initial_colors(rels, cols, n))
    return best[0], best[1]


def canonical_form(structure) -> CanonicalForm:
    """Isomorphism-invariant encoding plus the relabeling that produces it."""
    enc, perm = canonical_labeling(structure.relations(), structure.n)
    return CanonicalForm((structure.kind, structure.n, enc), perm)


def canonical_structure(structure):
    return structure.relabel(canonical_form(structure).relabeling)


def isomorphic(a, b) -> bool:
    return canonical_form(a).encoding == canonical_form(b).encoding


@dataclass(frozen=True)
class Automorphisms:
    elements: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    return tuple(p[q[i]] for i in range(len(q)))


def _closure(gens: Sequence[tuple[int, ...]], n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for h in gens:
            x = _compose(h, g)
            if x not in group:
                group.add(x)
                frontier.append(x)
    return group


def automorphisms(structure, max_size: int = 12) -> Automorphisms:
    if structure.n > max_size:
        raise ValueError(f"structure has {structure.n} elements; automorphism bound is {max_size}")
    rels = structure.relations()
    elems = tuple(iter_relational_embeddings(rels, rels, structure.n, structure.n))
    if isinstance(structure, FiniteLattice):
        elems = tuple(m for m in elems if _preserves_operations(structure, structure, m))
    gens: list[tuple[int, ...]] = []
    span = _closure(gens, structure.n)
    for g in elems:
        if g not in span:
            gens.append(g)
            span = _closure(gens, structure.n)
    return Automorphisms(elems, tuple(gens))


def is_rigid(structure) -> bool:
    rels = structure.relations()
    it = iter_relational_embeddings(rels, rels, structure.n, structure.n)
    next(it)
    return next(it, None) is None


# -- lattices as posets -----------------------------------------------------

def rel(lattice: FiniteLattice) -> FinitePoset:
    """The poset with a ⊑ b iff a ∧ b = a."""
    n = lattice.n
    return FinitePoset(n, tuple(to_mask(b for b in range(n) if lattice.meet[a][b] == a) for a in range(n)))


def _extremum(bounds: int, rows: Sequence[int]) -> int | None:
    for g in bits(bounds):
        if rows[g] == bounds:
            return g
    return None


def lattice_from_poset(p: FinitePoset) -> FiniteLattice:
    n = p.n
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            g = _extremum(p.down[a] & p.down[b], p.down)
            if g is None:
                raise NotALattice((a, b), "greatest lower bound")
            lub = _extremum(p.up[a] & p.up[b], p.up)
            if lub is None:
                raise NotALattice((a, b), "least upper bound")
            meet[a][b] = meet[b][a] = g
            join[a][b] = join[b][a] = lub
    return FiniteLattice(tuple(map(tuple, meet)), tuple(map(tuple, join)))


def is_lattice_poset(p: FinitePoset) -> bool:
    try:
        lattice_from_poset(p)
    except NotALattice:
        return False
    return True


def generated_substructure(lattice: FiniteLattice, generators: Iterable[int]) -> tuple[FiniteLattice, tuple[int, ...]]:
    """Sublattice generated by ``generators`` and its inclusion map.

    The sublattice's element t is ``inclusion[t]`` in the original lattice.
    """
    closed = set(generators)
    if not closed:
        raise ValueError("cannot generate from the empty set: lattices here have no constants")
    frontier = list(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(closed):
                for c in (lattice.meet[a][b], lattice.join[a][b]):
                    if c not in closed:
                        new.add(c)
        closed |= new
        frontier = list(new)
    inclusion = tuple(sorted(closed))
    index = {e: t for t, e in enumerate(inclusion)}
    meet = tuple(tuple(index[lattice.meet[a][b]] for b in inclusion) for a in inclusion)
    join = tuple(tuple(index[lattice.join[a][b]] for b in inclusion) for a in inclusion)
    return FiniteLattice(meet, join), inclusion


# -- a few named structures -------------------------------------------------

def boolean_poset(k: int) -> FinitePoset:
    """Subsets of a k-set under ⊆, element index = bitmask."""
    n = 1 << k
    return FinitePoset(n, tuple(to_mask(b for b in range(n) if a & b == a) for a in range(n)))


def chain_lattice(n: int) -> FiniteLattice:
    meet = tuple(tuple(min(a, b) for b in range(n)) for a in range(n))
    join = tuple(tuple(max(a, b) for b in range(n)) for a in range(n))
    return FiniteLattice(meet, join)


def m3() -> FiniteLattice:
    """Diamond: 0 bottom, 1..3 atoms, 4 top."""
    return lattice_from_poset(FinitePoset.from_pairs(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def n5() -> FiniteLattice:
    """Pentagon: 0 < a=1 < b=2 < 4 and 0 < c=3 < 4."""
    return lattice_from_poset(FinitePoset.from_pairs(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]))
