from itertools import combinations

import pytest
from hypothesis import given, settings

from ramsey_posets.powerset_pi import (
    PowersetPi,
    compare,
    downset_profile,
    mask_items,
    pi,
    precedes,
    sorted_subsets,
    subset_mask,
)
from ramsey_posets.structures import LinearlyOrderedPoset, canonical_form, rel, validate
from ramsey_posets.varieties import powerset_lattice

from . import oracles
from .strategies import ordered_posets


def _as_sets(n):
    return [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]


def _ref_precedes(variant, a: frozenset, b: frozenset, n: int) -> bool:
    """The three definitions written out on Python sets."""
    if a == b:
        return False
    if variant == "lex":
        return a <= b or (not b <= a and min(b - a) < min(a - b))
    if variant == "alex":
        return a <= b or (not b <= a and max(a - b) < max(b - a))
    full = frozenset(range(1, n + 1))
    return _ref_precedes("lex", full - a, full - b, n)


@pytest.mark.parametrize("variant", ["lex", "alex", "clex"])
@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_subset_orders_are_strict_total_orders(variant, n):
    sets = _as_sets(n)
    masks = [subset_mask(s) for s in sets]
    for a in masks:
        assert not precedes(variant, a, a)
        for b in masks:
            if a != b:
                assert precedes(variant, a, b) != precedes(variant, b, a)
            for c in masks:
                if precedes(variant, a, b) and precedes(variant, b, c):
                    assert precedes(variant, a, c)


@pytest.mark.parametrize("variant", ["lex", "alex", "clex"])
def test_orders_match_set_definitions(variant):
    n = 4
    for a in _as_sets(n):
        for b in _as_sets(n):
            assert precedes(variant, subset_mask(a), subset_mask(b)) == _ref_precedes(variant, a, b, n)


def test_clex_examples():
    assert compare("clex", {1}, {2}, 2) == "less"
    order = [mask_items(m) for m in sorted_subsets("clex", 2)]
    assert order == [[1, 2], [1], [2], []]
    assert compare("lex", set(), {3}, 3) == "less"
    assert compare("alex", {1, 2}, {1, 2}, 2) == "equal"


def test_clex_is_lex_on_complements():
    full = (1 << 4) - 1
    for a in range(16):
        for b in range(16):
            assert precedes("clex", a, b) == precedes("lex", full & ~a, full & ~b)


def test_small_pi():
    assert pi(0).n == 1
    p1 = pi(1)
    assert p1.order == (1, 0)  # {1} then ∅
    assert p1.poset.leq(1, 0)
    assert pi(2).order == (3, 1, 2, 0)


@pytest.mark.parametrize("n", range(6))
def test_pi_validates(n):
    assert validate(pi(n)) is None


def test_lazy_pi_agrees_with_explicit():
    p = pi(4)
    lazy = PowersetPi(4)
    for i in range(16):
        for j in range(16):
            assert lazy.leq(i, j) == p.leq(i, j)
            assert lazy.less(i, j) == p.less(i, j)


def test_pi_bound():
    with pytest.raises(ValueError):
        pi(5, max_n=4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_powerset_lattice_is_dual_to_pi(n):
    a = rel(powerset_lattice(n))
    assert canonical_form(a.dual()).encoding == canonical_form(pi(n).poset).encoding


def test_profile_examples():
    assert downset_profile(LinearlyOrderedPoset.chain(2)).label_sets() == [[1], [1, 2]]
    assert downset_profile(LinearlyOrderedPoset.antichain(2)).label_sets() == [[1], [2], [1, 2]]
    for n in range(1, 5):
        assert downset_profile(LinearlyOrderedPoset.antichain(n)).m == 2 ** n - 1


@given(ordered_posets(min_n=1, max_n=6))
@settings(max_examples=80)
def test_profile_matches_brute_force(a):
    prof = downset_profile(a)
    want = oracles.downsets_by_filter(oracles.leq_matrix(a.poset), a.order)
    got = [frozenset(s) for s in prof.label_sets()]
    assert sorted(map(sorted, got)) == sorted(map(sorted, want))
    # strictly increasing in the anti-lexicographic order
    for x, y in zip(prof.downsets, prof.downsets[1:]):
        assert precedes("alex", x, y)


@given(ordered_posets(min_n=2, max_n=5))
@settings(max_examples=60)
def test_principal_and_non_principal_downsets(a):
    sets = set(downset_profile(a).element_sets())
    down = [frozenset(j for j in range(a.n) if a.leq(j, i)) for i in range(a.n)]
    assert all(d in sets for d in down)
    for i in range(a.n):
        for j in range(a.n):
            if not a.poset.comparable(i, j):
                union = down[i] | down[j]
                assert union in sets
                assert union not in down
