"""Lattice terms and identities, powerset lattices, bounded amalgamation search."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Union

from .structures import (
    FiniteLattice,
    canonical_form,
    is_lattice_poset,
    iter_embeddings,
    lattice_from_poset,
)


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Meet:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"({self.left} ∧ {self.right})"


@dataclass(frozen=True)
class Join:
    left: "Term"
    right: "Term"

    def __str__(self) -> str:
        return f"({self.left} ∨ {self.right})"


Term = Union[Var, Meet, Join]


def variables(t: Term) -> list[str]:
    out: list[str] = []

    def walk(s):
        if isinstance(s, Var):
            if s.name not in out:
                out.append(s.name)
        else:
            walk(s.left)
            walk(s.right)

    walk(t)
    return out


def evaluate(t: Term, lattice: FiniteLattice, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        return env[t.name]
    a = evaluate(t.left, lattice, env)
    b = evaluate(t.right, lattice, env)
    return lattice.meet[a][b] if isinstance(t, Meet) else lattice.join[a][b]


_TOKEN = re.compile(r"\s*(?:(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[∧∨^&|()=])|(?P<bad>\S))")


def _tokens(text: str) -> list[str]:
    out = []
    for m in _TOKEN.finditer(text):
        if m.group("bad"):
            raise ValueError(f"unexpected character {m.group('bad')!r}")
        out.append(m.group("var") or m.group("op"))
    return out


def parse_term(text: str) -> Term:
    """Parse ``x ∧ (y ∨ z)``; ``^``/``&`` mean meet, ``v``/``|`` join.

    Meet binds tighter than join.  The bare letter ``v`` between two terms is
    read as join, so it cannot be used as a variable name.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def atom() -> Term:
        tok = take() if peek() is not None else None
        if tok == "(":
            t = join_expr()
            if peek() != ")":
                raise ValueError("missing ')'")
            take()
            return t
        if tok is None or tok in "∧∨^&|()=" or tok == "v":
            raise ValueError(f"expected a variable, got {tok!r}")
        return Var(tok)

    def meet_expr() -> Term:
        t = atom()
        while peek() in ("∧", "^", "&"):
            take()
            t = Meet(t, atom())
        return t

    def join_expr() -> Term:
        t = meet_expr()
        while peek() in ("∨", "|", "v"):
            take()
            t = Join(t, meet_expr())
        return t

    t = join_expr()
    if pos != len(toks):
        raise ValueError(f"trailing input at {toks[pos]!r}")
    return t


def parse_identity(text: str) -> tuple[Term, Term]:
    if text.count("=") != 1:
        raise ValueError("an identity needs exactly one '='")
    lhs, rhs = text.split("=")
    return parse_term(lhs), parse_term(rhs)


DISTRIBUTIVE = parse_identity("x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)")
MODULAR = parse_identity("x ∧ (y ∨ (x ∧ z)) = (x ∧ y) ∨ (x ∧ z)")
NAMED_IDENTITIES = {"distributive": DISTRIBUTIVE, "modular": MODULAR}


@dataclass(frozen=True)
class IdentityCheck:
    holds: bool
    countermodel: dict[str, int] | None = None
    values: tuple[int, int] | None = None  # (lhs, rhs) at the countermodel


def satisfies_identity(lattice: FiniteLattice, lhs: Term, rhs: Term) -> IdentityCheck:
    """Evaluate both sides under every assignment; report the first that differs."""
    names = variables(lhs) + [v for v in variables(rhs) if v not in variables(lhs)]
    for vals in product(range(lattice.n), repeat=len(names)):
        env = dict(zip(names, vals))
        left, right = evaluate(lhs, lattice, env), evaluate(rhs, lattice, env)
        if left != right:
            return IdentityCheck(False, env, (left, right))
    return IdentityCheck(True)


def powerset_lattice(n: int, max_n: int = 10) -> FiniteLattice:
    """(P({1..n}), ∩, ∪) with element index = bitmask; ordered by ⊆."""
    if n > max_n:
        raise ValueError(f"powerset lattice of {n} points exceeds bound {max_n}")
    size = 1 << n
    meet = tuple(tuple(a & b for b in range(size)) for a in range(size))
    join = tuple(tuple(a | b for b in range(size)) for a in range(size))
    return FiniteLattice(meet, join)


def lattices_up_to_iso(size: int) -> Iterator[FiniteLattice]:
    """Lattices with ``size`` elements, one per isomorphism type."""
    from .census import posets_up_to_iso

    for p in posets_up_to_iso(size):
        if is_lattice_poset(p):
            yield lattice_from_poset(p)


class AmalgamNotFound(LookupError):
    """No amalgam up to the size bound; says nothing about larger sizes."""


@dataclass(frozen=True)
class LatticeAmalgam:
    d: FiniteLattice
    g1: tuple[int, ...]
    g2: tuple[int, ...]


def check_ap(a: FiniteLattice, b1: FiniteLattice, b2: FiniteLattice, f1, f2,
             identity: tuple[Term, Term] | None = None, size_bound: int = 6) -> LatticeAmalgam:
    """Search for d and lattice embeddings g1, g2 with g1∘f1 = g2∘f2.

    Candidates are all lattices of size max(|b1|, |b2|) .. ``size_bound``,
    one per isomorphism type, restricted to those satisfying ``identity``.
    """
    f1, f2 = tuple(f1), tuple(f2)
    for s, t, f in ((a, b1, f1), (a, b2, f2)):
        from .structures import embedding_violation

        v = embedding_violation(s, t, f, "lattice")
        if v is not None:
            raise ValueError(f"input map is not a lattice embedding: {v}")
    for size in range(max(b1.n, b2.n), size_bound + 1):
        for d in lattices_up_to_iso(size):
            if identity is not None and not satisfies_identity(d, *identity).holds:
                continue
            g2s = [m.map for m in iter_embeddings(b2, d, "lattice")]
            if not g2s:
                continue
            for g1 in iter_embeddings(b1, d, "lattice"):
                want = tuple(g1.map[i] for i in f1)
                for g2 in g2s:
                    if tuple(g2[i] for i in f2) == want:
                        return LatticeAmalgam(d, g1.map, g2)
    raise AmalgamNotFound(f"no amalgam with at most {size_bound} elements")


def order_dual_isomorphic(p, q) -> bool:
    return canonical_form(p.dual()).encoding == canonical_form(q).encoding
