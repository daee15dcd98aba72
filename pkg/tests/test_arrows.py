import pytest

from ramsey_posets.arrows import (
    NotFoundWithinBound,
    Outcome,
    check_arrow,
    constraint_sets,
    copies_of,
    find_min_pi_arrow,
    refutes,
    sat_available,
    verify_refutation,
)
from ramsey_posets.powerset_pi import pi
from ramsey_posets.structures import FinitePoset, LinearlyOrderedPoset, boolean_poset

from . import oracles
from .arrow_instances import brute_arrow, brute_copies, generate

POINT = LinearlyOrderedPoset.chain(1)
CHAIN2 = LinearlyOrderedPoset.chain(2)
ANTI2 = LinearlyOrderedPoset.antichain(2)

ENGINES = ["backtrack"] + (["sat"] if sat_available() else [])
engines = pytest.mark.parametrize("backend", ENGINES)


def test_copy_examples():
    assert len(copies_of(POINT, LinearlyOrderedPoset.antichain(5))) == 5
    cs = copies_of(ANTI2, pi(2))
    assert cs.copies == ((1, 2),)  # {1} and {2}
    b2 = boolean_poset(2)
    assert len(copies_of(FinitePoset.chain(2), b2)) == 5


def test_copies_match_brute_force():
    for c, a, b, _ in generate(40, seed=7):
        assert {frozenset(x) for x in copies_of(a, c).copies} == set(brute_copies(a, c))
        assert {frozenset(x) for x in copies_of(b, c).copies} == set(brute_copies(b, c))


def test_constraint_paths_agree():
    """Subset lookup and the full scan give the same constraint sets."""
    c = pi(4)
    a_cs = copies_of(ANTI2, c)
    b_cs = copies_of(LinearlyOrderedPoset.antichain(3), c)
    fast = constraint_sets(a_cs, b_cs)
    slow = [tuple(i for i, am in enumerate(a_cs.masks) if am & ~bm == 0) for bm in b_cs.masks]
    assert fast == slow


def test_pigeonhole_holds():
    v = check_arrow(LinearlyOrderedPoset.antichain(3), POINT, ANTI2, 2)
    assert v.outcome is Outcome.HOLDS


@engines
def test_single_copy_fails(backend):
    v = check_arrow(CHAIN2, POINT, CHAIN2, 2, backend=backend)
    assert v.outcome is Outcome.FAILS
    assert sorted(v.refutation) == [0, 1]
    assert verify_refutation(v)


@engines
@pytest.mark.parametrize("k", [2, 3])
@pytest.mark.parametrize("m", [2, 3])
def test_pigeonhole_threshold(k, m, backend):
    b = LinearlyOrderedPoset.antichain(m)
    below = check_arrow(LinearlyOrderedPoset.antichain(k * (m - 1)), POINT, b, k, backend=backend)
    at = check_arrow(LinearlyOrderedPoset.antichain(k * (m - 1) + 1), POINT, b, k, backend=backend)
    assert below.outcome is Outcome.FAILS and verify_refutation(below)
    assert at.outcome is Outcome.HOLDS


@engines
def test_agrees_with_enumeration(backend):
    for c, a, b, k in generate(60, seed=11):
        v = check_arrow(c, a, b, k, backend=backend)
        assert v.stats["backend"] == backend
        assert v.holds == brute_arrow(c, a, b, k)
        if not v.holds:
            assert verify_refutation(v)


def test_monotone_under_extension():
    for c, a, b, k in generate(30, seed=3):
        if not check_arrow(c, a, b, k).holds or c.n >= 7:
            continue
        # add an isolated top-ranked point
        big = LinearlyOrderedPoset(FinitePoset(c.n + 1, c.poset.up + (1 << c.n,)), c.order + (c.n,))
        assert check_arrow(big, a, b, k).holds


def test_refutes_checks_colors():
    assert refutes([0, 1], [(0, 1)], 2)
    assert not refutes([0, 0], [(0, 1)], 2)
    assert not refutes([0, 2], [(0, 1)], 2)


@engines
def test_node_limit_gives_unknown(backend):
    # Π_6 arrows this 4-element target, but any proof takes many nodes (or conflicts)
    b1 = LinearlyOrderedPoset(FinitePoset(4, (0b0101, 0b0110, 0b0100, 0b1000)), (0, 3, 1, 2))
    hard = check_arrow(pi(6), ANTI2, b1, 2, node_limit=50, backend=backend)
    assert hard.outcome is Outcome.UNKNOWN
    anti3 = LinearlyOrderedPoset.antichain(3)
    assert check_arrow(pi(3), ANTI2, anti3, 2, node_limit=0, backend=backend).outcome is Outcome.UNKNOWN


@engines
def test_time_limit_gives_unknown(backend):
    hard = check_arrow(pi(6), ANTI2, LinearlyOrderedPoset.antichain(5), 3, time_limit=0.0, backend=backend)
    assert hard.outcome is Outcome.UNKNOWN


def test_backends_agree_on_pi_hosts():
    if not sat_available():
        pytest.skip("python-sat not installed")
    for n in range(5):
        for b in (CHAIN2, LinearlyOrderedPoset.antichain(3), LinearlyOrderedPoset.chain(3)):
            one = check_arrow(pi(n), ANTI2, b, 2, backend="backtrack")
            two = check_arrow(pi(n), ANTI2, b, 2, backend="sat")
            assert one.outcome == two.outcome
            if two.outcome is Outcome.FAILS:
                assert verify_refutation(two)


def test_unknown_backend():
    with pytest.raises(ValueError):
        check_arrow(CHAIN2, POINT, CHAIN2, 2, backend="quantum")


def test_tampered_refutation_is_rejected():
    v = check_arrow(CHAIN2, POINT, CHAIN2, 2)
    v.refutation = (0, 0)
    assert not verify_refutation(v)


def test_min_pi_arrow_examples():
    assert find_min_pi_arrow(POINT, POINT, 2, 3).n == 0
    found = find_min_pi_arrow(POINT, CHAIN2, 2, 4)
    assert found.n == 2
    assert [o for _, o in found.tried] == ["fails", "fails", "holds"]


def test_min_pi_arrow_bound():
    with pytest.raises(NotFoundWithinBound) as e:
        find_min_pi_arrow(POINT, CHAIN2, 2, 1)
    assert e.value.n_max == 1 and e.value.last.outcome is Outcome.FAILS
