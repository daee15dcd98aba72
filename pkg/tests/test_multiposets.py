from itertools import product

import pytest

from ramsey_posets.amalgamation import two_generated, wtc_check
from ramsey_posets.census import posets_up_to_iso
from ramsey_posets.multiposets import (
    Multiposet,
    Template,
    TemplateClass,
    common_extension,
    from_pairs,
    fully_incomparable,
    has_top,
    pairwise_consistency_violation,
    validate_multiposet,
    verify_op_witness_multi,
    wtc_tau_for_template,
)
from ramsey_posets.ordering_property import verify_op_witness
from ramsey_posets.structures import (
    FinitePoset,
    LinearlyOrderedPoset,
    iter_linear_extensions,
    validate,
)

from . import oracles

TRIVIAL = Template.trivial()
ANTI_T2 = Template(FinitePoset.antichain(2))
CHAIN_T2 = Template(FinitePoset.chain(2))


def test_single_relation_reduces_to_ordered_posets():
    for p in posets_up_to_iso(3):
        for order in iter_linear_extensions(p):
            m = Multiposet(3, (p.up,), tuple(order))
            assert validate_multiposet(m, TRIVIAL) is None
        bad = Multiposet(3, (p.up,), (2, 1, 0))
        want = validate(LinearlyOrderedPoset(p, (2, 1, 0))) is None
        assert (validate_multiposet(bad, TRIVIAL) is None) == want


def test_forbidden_pattern():
    m = from_pairs(2, [[(0, 1)], [(1, 0)]])
    v = validate_multiposet(m, ANTI_T2)
    assert v.rule == "consistency"


def test_conformance():
    m = from_pairs(2, [[(0, 1)], []])  # relation 0 has a pair that relation 1 lacks
    assert validate_multiposet(m, CHAIN_T2).rule == "conformance"
    assert validate_multiposet(m, ANTI_T2) is None


def test_arity_and_order_extension():
    assert validate_multiposet(fully_incomparable(2, 1), ANTI_T2).rule == "arity"
    m = from_pairs(2, [[(0, 1)], []], order=(1, 0))
    assert validate_multiposet(m, ANTI_T2).rule == "order extension"


def _matrices(m):
    return [[[bool(r[i] >> j & 1) for j in range(m.n)] for i in range(m.n)] for r in m.orders]


def _brute_consistent(m) -> bool:
    mats = _matrices(m)
    for perm in product(range(m.n), repeat=m.n):
        if len(set(perm)) != m.n:
            continue
        pos = {e: r for r, e in enumerate(perm)}
        if all(pos[i] < pos[j] for mat in mats for i in range(m.n) for j in range(m.n) if i != j and mat[i][j]):
            return True
    return m.n == 0


def _all_multiposets(n, k):
    orders = [tuple(sum(1 << j for j in range(n) if mat[i][j]) for i in range(n))
              for mat in oracles.all_partial_orders(n)]
    for combo in product(orders, repeat=k):
        yield Multiposet(n, combo)


def test_consistency_by_extension_matches_brute_force():
    for n, k in [(2, 2), (3, 2), (3, 3), (4, 2)]:
        for m in _all_multiposets(n, k):
            assert (common_extension(m) is not None) == _brute_consistent(m)


def test_pairwise_criterion_where_it_is_exact():
    """With a greatest template element every relation lies inside one order,
    and then the pairwise test decides consistency."""
    top = Template(FinitePoset.from_pairs(3, [(0, 2), (1, 2)]))
    assert has_top(top)
    for n in (2, 3):
        for m in _all_multiposets(n, 3):
            if validate_multiposet(m, top) is not None and validate_multiposet(m, top).rule == "conformance":
                continue
            assert (pairwise_consistency_violation(m) is None) == (common_extension(m) is not None)


def test_pairwise_criterion_gap():
    """Cycles spread over several relations slip past the pairwise test."""
    four = from_pairs(4, [[(0, 1), (2, 3)], [(1, 2), (3, 0)]])
    assert pairwise_consistency_violation(four) is None
    assert common_extension(four) is None
    assert validate_multiposet(four, ANTI_T2).detail == "no common linear extension"
    three = from_pairs(3, [[(0, 1)], [(1, 2)], [(2, 0)]])
    assert pairwise_consistency_violation(three) is None and common_extension(three) is None
    # agreement on every pair of 2 or 3 points, any number of relations up to 3
    for n, k in [(2, 2), (2, 3), (3, 2)]:
        for m in _all_multiposets(n, k):
            assert (pairwise_consistency_violation(m) is None) == (common_extension(m) is not None)


def test_members_validate_and_are_distinct():
    from ramsey_posets.structures import canonical_form

    for tp in posets_up_to_iso(2):
        cls = TemplateClass(Template(tp))
        ms = list(cls.members(3))
        assert all(validate_multiposet(m, cls.template) is None for m in ms)
        assert len({canonical_form(m).encoding for m in ms}) == len(ms)


def test_tau_examples():
    assert wtc_tau_for_template(TRIVIAL) == Multiposet(2, ((1, 2),), (0, 1))
    for tp in posets_up_to_iso(2):
        t = Template(tp)
        cls = TemplateClass(t)
        tau = wtc_tau_for_template(t)
        assert cls.contains(tau)
        inst = wtc_check(cls.pair_types(), tau, cls, bound=3)
        assert all(w.d.n == 3 for w in inst.witnesses)
        for w in inst.witnesses:
            if w.sigma == tau:
                assert all(r == (1, 2, 4) for r in w.d.orders)


def test_op_witness_multi_examples():
    pair = fully_incomparable(2, 2, ordered=False)
    r = verify_op_witness_multi(pair, pair, ANTI_T2)
    assert r.verified and r.checked_pairs == 4
    related = from_pairs(2, [[(0, 1)], []])
    r = verify_op_witness_multi(related, fully_incomparable(3, 2, ordered=False), ANTI_T2)
    assert r.verified is False


def test_op_witness_multi_reduces_to_posets():
    for a in posets_up_to_iso(2):
        for b in posets_up_to_iso(3):
            r1 = verify_op_witness_multi(Multiposet(a.n, (a.up,)), Multiposet(b.n, (b.up,)), TRIVIAL)
            r2 = verify_op_witness(a, b)
            assert r1.verified == r2.verified


def test_two_generated_pairs():
    cls = TemplateClass(ANTI_T2)
    assert len(two_generated(cls.members(3))) == 4
