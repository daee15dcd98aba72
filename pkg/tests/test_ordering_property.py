from itertools import permutations

import pytest
from hypothesis import given, settings

from ramsey_posets.amalgamation import OrderedPosets, nabla, wtc_check
from ramsey_posets.arrows import copies_of
from ramsey_posets.census import ordered_posets_up_to_iso, posets_up_to_iso
from ramsey_posets.ordering_property import (
    build_b1,
    comparable_pair,
    find_avoiding_extension,
    op_witness_via_arrow,
    sierpinski_coloring,
    verify_op_witness,
    verify_op_witness_by_enumeration,
)
from ramsey_posets.powerset_pi import pi
from ramsey_posets.structures import (
    FinitePoset,
    LinearlyOrderedPoset,
    iter_linear_extensions,
    isomorphic,
    validate,
)

from .strategies import ordered_posets, posets

CHAIN2 = LinearlyOrderedPoset.chain(2)
ANTI2 = LinearlyOrderedPoset.antichain(2)
TRIANGLE = LinearlyOrderedPoset(FinitePoset(3, (0b011, 0b010, 0b100)), (0, 2, 1))  # x=0 ⊏ y=1, z=2


def test_verify_examples():
    r = verify_op_witness(FinitePoset.antichain(2), FinitePoset.antichain(2))
    assert r.verified and r.checked_pairs == 4
    r = verify_op_witness(FinitePoset.chain(2), FinitePoset.chain(2))
    assert r.verified and r.checked_pairs == 1
    r = verify_op_witness(FinitePoset.antichain(2), FinitePoset.chain(2))
    assert r.verified is False and r.counterexample is not None


@given(posets(min_n=1, max_n=3), posets(min_n=1, max_n=5))
@settings(max_examples=80)
def test_prefix_search_agrees_with_enumeration(a, b):
    fast = verify_op_witness(a, b)
    slow = verify_op_witness_by_enumeration(a, b)
    assert fast.verified == slow.verified
    if fast.verified is False:
        base_order, w_order = fast.counterexample
        host = LinearlyOrderedPoset(b, w_order)
        assert validate(host) is None
        assert verify_op_witness_by_enumeration(LinearlyOrderedPoset(a, base_order), host.poset).verified is False


@given(posets(min_n=1, max_n=3), posets(min_n=1, max_n=4))
@settings(max_examples=40)
def test_op_is_op_prime_over_all_orders(a, b):
    """Witnessing for a poset is witnessing for each of its linear orders."""
    whole = verify_op_witness(a, b).verified
    each = all(verify_op_witness(LinearlyOrderedPoset(a, o), b).verified for o in iter_linear_extensions(a))
    assert whole == each


def test_result_independent_of_relabeling():
    a = FinitePoset.from_pairs(3, [(0, 1)])
    b = pi(3).poset
    base = verify_op_witness(a, b).verified
    for perm in permutations(range(3)):
        assert verify_op_witness(a.relabel(perm), b).verified == base


def test_avoiding_extension_is_genuine():
    host = FinitePoset.antichain(3)
    ext = find_avoiding_extension(CHAIN2, host)  # the 2-chain never embeds in an antichain
    assert ext is not None and sorted(ext) == [0, 1, 2]
    assert find_avoiding_extension(ANTI2, host) is None


def test_budget_gives_unknown():
    r = verify_op_witness(FinitePoset.antichain(3), pi(4).poset, node_limit=1)
    assert r.verified is None


def test_build_b1():
    assert build_b1(CHAIN2, 0, 1) == TRIANGLE
    three = LinearlyOrderedPoset.chain(3)
    b1 = build_b1(three, 0, 2)
    assert b1.order == (0, 3, 1, 2)  # z right after x even though 1 lies between
    assert validate(b1) is None
    with pytest.raises(ValueError):
        build_b1(ANTI2, 0, 1)


def test_b1_matches_nabla():
    inst = wtc_check([CHAIN2], ANTI2, OrderedPosets())
    assert isomorphic(nabla(CHAIN2, inst).structure, TRIANGLE)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_antichains_witness_themselves(n):
    r = op_witness_via_arrow(LinearlyOrderedPoset.antichain(n))
    assert r.verified and r.witness == FinitePoset.antichain(n) and r.arrow_n is None


def test_chain_witness_is_pi4():
    r = op_witness_via_arrow(CHAIN2, n_max=5)
    assert r.arrow_n == 4
    assert r.verified is True
    assert r.witness == pi(4).poset


def test_comparable_pair_choice():
    b = LinearlyOrderedPoset(FinitePoset.from_pairs(3, [(1, 2), (0, 2)]), (0, 1, 2))
    assert comparable_pair(b) == (0, 2)
    assert comparable_pair(LinearlyOrderedPoset.antichain(3)) is None


# -- Sierpinski colorings -------------------------------------------------------

def test_sierpinski_examples():
    host = pi(2)
    pairs = copies_of(ANTI2, host)
    assert sierpinski_coloring(host, host.order, pairs) == (0,) * len(pairs)
    anti = LinearlyOrderedPoset.antichain(4)
    rev = tuple(reversed(anti.order))
    assert set(sierpinski_coloring(anti, rev, copies_of(ANTI2, anti))) == {1}
    swapped = (3, 2, 1, 0)  # {1,2}, {2}, {1}, ∅
    assert sierpinski_coloring(host, swapped, pairs) == (1,)
    assert set(sierpinski_coloring(host, swapped, copies_of(CHAIN2, host))) == {0}
    with pytest.raises(ValueError):
        sierpinski_coloring(host, (0, 1, 2), pairs)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_agreement_lemma(n):
    """An extension agreeing on every 2-antichain copy is the host order itself."""
    for host in ordered_posets_up_to_iso(n):
        pairs = copies_of(ANTI2, host)
        for other in iter_linear_extensions(host.poset):
            if set(sierpinski_coloring(host, other, pairs)) <= {0}:
                assert tuple(other) == host.order


def test_triangle_contradiction():
    """No extension of the triangle's partial order disagrees on both antichain pairs.

    Disagreement on {x, z} and {z, y} would force y before z before x while
    x lies below y.
    """
    pairs = copies_of(ANTI2, TRIANGLE)
    assert sorted(map(sorted, pairs.copies)) == [[0, 2], [1, 2]]
    colorings = [sierpinski_coloring(TRIANGLE, o, pairs) for o in iter_linear_extensions(TRIANGLE.poset)]
    assert (1, 1) not in colorings
    # the forbidden pattern itself breaks the partial order
    forced = (1, 2, 0)
    assert sierpinski_coloring(TRIANGLE, forced, pairs) == (1, 1)
    assert validate(LinearlyOrderedPoset(TRIANGLE.poset, forced)) is not None
