from itertools import product

import pytest

from ramsey_posets.census import posets_up_to_iso
from ramsey_posets.structures import (
    FiniteLattice,
    canonical_form,
    chain_lattice,
    embedding_violation,
    is_lattice_poset,
    lattice_from_poset,
    m3,
    n5,
    rel,
    validate,
)
from ramsey_posets.varieties import (
    DISTRIBUTIVE,
    MODULAR,
    AmalgamNotFound,
    Join,
    Meet,
    Var,
    check_ap,
    lattices_up_to_iso,
    parse_identity,
    parse_term,
    powerset_lattice,
    satisfies_identity,
    variables,
)

from . import oracles


def _postfix(t) -> list[str]:
    if isinstance(t, Var):
        return [t.name]
    return _postfix(t.left) + _postfix(t.right) + ["^" if isinstance(t, Meet) else "v"]


def _oracle_holds(lat, lhs, rhs) -> bool:
    names = sorted(set(variables(lhs)) | set(variables(rhs)))
    pl, pr = _postfix(lhs), _postfix(rhs)
    for vals in product(range(lat.n), repeat=len(names)):
        env = dict(zip(names, vals))
        if oracles.evaluate_postfix(pl, lat.meet, lat.join, env) != oracles.evaluate_postfix(pr, lat.meet, lat.join, env):
            return False
    return True


def test_parser():
    t = parse_term("x ∧ (y ∨ z)")
    assert t == Meet(Var("x"), Join(Var("y"), Var("z")))
    assert parse_term("x & y | z") == Join(Meet(Var("x"), Var("y")), Var("z"))
    assert parse_term("a v b") == Join(Var("a"), Var("b"))
    lhs, rhs = parse_identity("x ^ y = y ^ x")
    assert variables(lhs) == ["x", "y"]
    for bad in ["x ∧", "(x", "x y", "x = y = z", "x + y"]:
        with pytest.raises(ValueError):
            parse_identity(bad) if "=" in bad else parse_term(bad)


def test_m3_is_modular_not_distributive():
    res = satisfies_identity(m3(), *DISTRIBUTIVE)
    assert not res.holds
    env = res.countermodel
    lat = m3()
    assert env == {"x": 1, "y": 2, "z": 3}  # three atoms
    assert res.values == (1, 0)  # a ∧ (b ∨ c) = a, (a∧b) ∨ (a∧c) = 0
    assert satisfies_identity(m3(), *MODULAR).holds


def test_n5_is_not_modular():
    res = satisfies_identity(n5(), *MODULAR)
    assert not res.holds
    assert not _oracle_holds(n5(), *MODULAR)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_boolean_lattices_are_distributive(n):
    assert satisfies_identity(powerset_lattice(n), *DISTRIBUTIVE).holds


def test_identity_check_matches_postfix_oracle():
    extra = parse_identity("x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)")
    for n in range(1, 6):
        for lat in lattices_up_to_iso(n):
            for ident in (DISTRIBUTIVE, MODULAR, extra):
                assert satisfies_identity(lat, *ident).holds == _oracle_holds(lat, *ident)


def test_lattice_counts():
    assert [sum(1 for _ in lattices_up_to_iso(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]


def test_powerset_lattice_facts():
    assert powerset_lattice(1).n == 2
    for n in range(5):
        lat = powerset_lattice(n)
        assert validate(lat) is None
        assert is_lattice_poset(rel(lat))
    assert satisfies_identity(powerset_lattice(4), *DISTRIBUTIVE).holds
    with pytest.raises(ValueError):
        powerset_lattice(11)


def _check_amalgam(a, b1, b2, f1, f2, r, ident=None):
    assert validate(r.d) is None
    assert embedding_violation(b1, r.d, r.g1, "lattice") is None
    assert embedding_violation(b2, r.d, r.g2, "lattice") is None
    assert all(r.g1[f1[i]] == r.g2[f2[i]] for i in range(a.n))
    if ident:
        assert satisfies_identity(r.d, *ident).holds


def test_ap_trivial():
    b2 = powerset_lattice(2)
    ident = tuple(range(4))
    r = check_ap(b2, b2, b2, ident, ident)
    assert canonical_form(r.d).encoding == canonical_form(b2).encoding


def test_ap_two_chains_over_ends():
    a, c3 = chain_lattice(2), chain_lattice(3)
    r = check_ap(a, c3, c3, (0, 2), (0, 2), DISTRIBUTIVE, size_bound=5)
    _check_amalgam(a, c3, c3, (0, 2), (0, 2), r, DISTRIBUTIVE)
    assert r.d.n == 3  # the two middles may be glued together
    r = check_ap(a, c3, c3, (0, 2), (0, 2), DISTRIBUTIVE, size_bound=5)
    assert r.g1 == r.g2


def test_ap_point_into_two_chains():
    a, c2 = chain_lattice(1), chain_lattice(2)
    for f1, f2 in [((0,), (0,)), ((0,), (1,)), ((1,), (0,))]:
        r = check_ap(a, c2, c2, f1, f2, size_bound=4)
        _check_amalgam(a, c2, c2, f1, f2, r)
        assert r.d.n <= 4


def test_ap_not_found_is_bounded():
    # M3 and N5 cannot both sit inside a 5-element lattice
    a = chain_lattice(2)
    bot = lambda lat: next(i for i in range(lat.n) if all(lat.meet[i][j] == i for j in range(lat.n)))
    top = lambda lat: next(i for i in range(lat.n) if all(lat.join[i][j] == i for j in range(lat.n)))
    f1, f2 = (bot(m3()), top(m3())), (bot(n5()), top(n5()))
    with pytest.raises(AmalgamNotFound):
        check_ap(a, m3(), n5(), f1, f2, size_bound=5)
    r = check_ap(a, m3(), n5(), f1, f2, size_bound=7)
    _check_amalgam(a, m3(), n5(), f1, f2, r)


def test_ap_rejects_bad_maps():
    with pytest.raises(ValueError):
        check_ap(chain_lattice(2), chain_lattice(3), chain_lattice(3), (0, 1), (1, 0))
