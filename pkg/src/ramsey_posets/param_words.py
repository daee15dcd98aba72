"""Parameter words, their composition, and the Φ embedding into Π_n."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, NamedTuple, Sequence

from .powerset_pi import PowersetPi, downset_profile
from .structures import LinearlyOrderedPoset, StructureMap

MAX_WORDS = 2_000_000


class Var(NamedTuple):
    """The parameter x_index (1-based)."""

    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


class InvalidWord(ValueError):
    pass


class NoFactor(RuntimeError):
    """No h satisfies the factorization identity; signals a bug, not bad input."""


@dataclass(frozen=True)
class ParamWord:
    letters: tuple
    m: int
    alphabet: tuple = (0,)

    def __post_init__(self):
        problem = word_violation(self.letters, self.m, self.alphabet)
        if problem:
            raise InvalidWord(problem)

    @property
    def n(self) -> int:
        return len(self.letters)

    def positions(self, i: int) -> list[int]:
        """u^{-1}(x_i), 1-based."""
        return [p + 1 for p, c in enumerate(self.letters) if c == Var(i)]

    def position_masks(self) -> list[int]:
        """X_i as masks over positions (bit p-1 for position p), i = 1..m."""
        masks = [0] * self.m
        for p, c in enumerate(self.letters):
            if isinstance(c, Var):
                masks[c.index - 1] |= 1 << p
        return masks

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.letters)

    @classmethod
    def identity(cls, m: int, alphabet: tuple = (0,)) -> ParamWord:
        return cls(tuple(Var(i) for i in range(1, m + 1)), m, alphabet)

    @classmethod
    def parse(cls, text: str, alphabet: tuple = (0,)) -> ParamWord:
        """Whitespace-separated tokens; ``x<k>`` is a parameter, anything else a symbol."""
        by_name = {str(a): a for a in alphabet}
        letters = []
        for tok in text.split():
            if tok[0] == "x" and tok[1:].isdigit():
                letters.append(Var(int(tok[1:])))
            elif tok in by_name:
                letters.append(by_name[tok])
            else:
                raise InvalidWord(f"token {tok!r} is neither a parameter nor in the alphabet {alphabet}")
        m = max((c.index for c in letters if isinstance(c, Var)), default=0)
        return cls(tuple(letters), m, alphabet)


def word_violation(letters: Sequence, m: int, alphabet: Sequence) -> str | None:
    first: dict[int, int] = {}
    for p, c in enumerate(letters):
        if isinstance(c, Var):
            if not 1 <= c.index <= m:
                return f"parameter {c} outside x1..x{m}"
            first.setdefault(c.index, p)
        elif c not in alphabet:
            return f"letter {c!r} not in alphabet"
    for i in range(1, m + 1):
        if i not in first:
            return f"parameter x{i} does not occur"
    for i in range(1, m):
        if first[i] > first[i + 1]:
            return f"x{i} first occurs after x{i + 1}"
    return None


def stirling2(n: int, k: int) -> int:
    row = [1] + [0] * k
    for i in range(1, n + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def count_words(n: int, m: int, alphabet_size: int) -> int:
    """|W^n_m(A)|: choose the parameter positions, partition them, fill the rest."""
    return sum(comb(n, j) * stirling2(j, m) * alphabet_size ** (n - j) for j in range(m, n + 1))


def iter_words(n: int, m: int, alphabet: tuple = (0,)) -> Iterator[ParamWord]:
    """W^n_m(A) in a fixed order: used parameters, then a fresh one, then symbols."""
    letters: list = [None] * n

    def extend(pos: int, used: int):
        if pos == n:
            yield ParamWord(tuple(letters), m, alphabet)
            return
        room = n - pos - 1
        for i in range(1, used + 1):
            if m - used <= room:
                letters[pos] = Var(i)
                yield from extend(pos + 1, used)
        if used < m:
            letters[pos] = Var(used + 1)
            yield from extend(pos + 1, used + 1)
        if m - used <= room:
            for a in alphabet:
                letters[pos] = a
                yield from extend(pos + 1, used)

    if 0 <= m <= n:
        yield from extend(0, 0)


def enumerate_words(n: int, m: int, alphabet: tuple = (0,), max_count: int = MAX_WORDS) -> list[ParamWord]:
    size = count_words(n, m, len(alphabet)) if 0 <= m <= n else 0
    if size > max_count:
        raise ValueError(f"|W^{n}_{m}| = {size} exceeds the bound {max_count}")
    return list(iter_words(n, m, alphabet))


def compose(u: ParamWord, v: ParamWord) -> ParamWord:
    """u · v: substitute v's i-th letter for every x_i in u."""
    if v.n != u.m:
        raise ValueError(f"cannot compose: u has {u.m} parameters but v has length {v.n}")
    if tuple(u.alphabet) != tuple(v.alphabet):
        raise ValueError("alphabets differ")
    sub = v.letters
    out = tuple(sub[c.index - 1] if isinstance(c, Var) else c for c in u.letters)
    return ParamWord(out, v.m, u.alphabet)


def phi_images(a: LinearlyOrderedPoset, u: ParamWord, profile=None) -> tuple[int, ...]:
    """Element images of Φ_{a,n}(u) as subset masks of {1..n}."""
    profile = profile or downset_profile(a)
    if u.m != profile.m:
        raise ValueError(f"word has {u.m} parameters but the structure has {profile.m} nonempty downsets")
    xs = u.position_masks()
    images = []
    for e in range(a.n):
        r = a.rank[e]
        img = 0
        for alpha, d in enumerate(profile.downsets):
            if d >> r & 1:
                img |= xs[alpha]
        images.append(img)
    return tuple(images)


def phi(a: LinearlyOrderedPoset, u: ParamWord) -> StructureMap:
    """Φ_{a,n}(u): element i goes to the union of X_α over downsets D_α ∋ i."""
    return StructureMap(a, PowersetPi(u.n), phi_images(a, u), "ordered-order")


def factor(f: StructureMap, u: ParamWord) -> ParamWord:
    """A word h with Φ_b(u) ∘ f = Φ_a(u · h), found by exhaustive search.

    ``f`` must be an ordered embedding a ↪ b and ``u`` a word with m_b
    parameters.  The first h in :func:`iter_words` order is returned.
    """
    a, b = f.source, f.target
    if not (isinstance(a, LinearlyOrderedPoset) and isinstance(b, LinearlyOrderedPoset)):
        raise TypeError("factor needs an embedding between linearly ordered posets")
    prof_a, prof_b = downset_profile(a), downset_profile(b)
    if u.m != prof_b.m:
        raise ValueError(f"u has {u.m} parameters, target has {prof_b.m} downsets")
    big = phi_images(b, u, prof_b)
    want = tuple(big[f.map[i]] for i in range(a.n))
    for h in iter_words(prof_b.m, prof_a.m, u.alphabet):
        if phi_images(a, compose(u, h), prof_a) == want:
            return h
    raise NoFactor(f"no h in W^{prof_b.m}_{prof_a.m} factors {f.map} through {u}")
