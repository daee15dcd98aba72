from ramsey_posets.census import census, lattice_posets, ordered_posets_up_to_iso, posets_up_to_iso
from ramsey_posets.structures import canonical_form, is_lattice_poset, validate

from . import oracles


def _brute_classes(n):
    mats = oracles.all_partial_orders(n)
    reps = []
    for m in mats:
        if not any(oracles.isomorphic_by_permutation(m, r) for r in reps):
            reps.append(m)
    return reps


def test_poset_counts_against_brute_force():
    for n in range(1, 5):
        assert len(posets_up_to_iso(n)) == len(_brute_classes(n))


def test_known_counts():
    rows = census(5)
    assert [r["posets"] for r in rows] == [1, 2, 5, 16, 63]
    assert [r["lattices"] for r in rows] == [1, 1, 1, 2, 5]
    assert [r["ordered_posets"] for r in rows] == [1, 2, 7, 40, 357]


def test_representatives_are_canonical_and_distinct():
    for n in range(1, 6):
        reps = posets_up_to_iso(n)
        assert all(validate(p) is None for p in reps)
        assert len({canonical_form(p).encoding for p in reps}) == len(reps)
        assert all(is_lattice_poset(p) for p in lattice_posets(n))


def test_ordered_posets_are_naturally_labelled():
    for n in range(1, 5):
        for s in ordered_posets_up_to_iso(n):
            assert s.order == tuple(range(n))
            assert all(not s.poset.leq(j, i) for i in range(n) for j in range(i + 1, n))
