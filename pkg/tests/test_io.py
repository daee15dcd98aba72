import json

import pytest
from hypothesis import given

from ramsey_posets.io import (
    StructureFormatError,
    StructureViolation,
    dumps,
    loads,
    structure_from_dict,
    structure_to_dict,
    template_from_dict,
)
from ramsey_posets.multiposets import Template, from_pairs
from ramsey_posets.powerset_pi import pi, pi_labels
from ramsey_posets.structures import FinitePoset, LinearlyOrderedPoset, m3

from .strategies import ordered_posets, posets


@given(posets(min_n=0, max_n=6))
def test_poset_round_trip(p):
    s, labels = loads(dumps(structure_to_dict(p)))
    assert s == p and labels == list(range(p.n))


@given(ordered_posets(min_n=1, max_n=6))
def test_ordered_round_trip(p):
    assert loads(dumps(structure_to_dict(p)))[0] == p


def test_lattice_and_labels_round_trip():
    labels = ["0", {"atom": 1}, [2], 3.5, "1"]
    s, back = loads(dumps(structure_to_dict(m3(), labels)))
    assert s == m3() and back == labels


def test_multiposet_round_trip():
    t = Template(FinitePoset.antichain(2))
    m = from_pairs(3, [[(0, 1)], [(1, 2)]], order=(0, 1, 2))
    s, _ = structure_from_dict(structure_to_dict(m, template=t))
    assert s == m


def test_pi_labels_are_subsets():
    doc = structure_to_dict(pi(2), pi_labels(2))
    assert doc["order"][0] == [1, 2] and doc["order"][-1] == []


def test_dumps_is_canonical():
    doc = structure_to_dict(LinearlyOrderedPoset.chain(2))
    assert dumps(doc) == dumps(json.loads(dumps(doc)))
    assert dumps(doc).endswith("\n") and ", " not in dumps(doc)


@pytest.mark.parametrize("text", [
    "{", "[]", '{"kind": "tree"}',
    '{"kind": "poset", "leq": [[true, false]]}',
    '{"kind": "poset", "labels": [1, 1], "leq": [[1,0],[0,1]]}',
    '{"kind": "poset", "leq": [[1, 2], [0, 1]]}',
    '{"kind": "ordered_poset", "leq": [[1]], "order": ["x"]}',
    '{"kind": "multiposet", "leq": []}',
])
def test_malformed_documents(text):
    with pytest.raises(StructureFormatError) as e:
        loads(text)
    assert not isinstance(e.value, StructureViolation)


@pytest.mark.parametrize("doc", [
    {"kind": "poset", "leq": [[1, 1], [1, 1]]},                       # antisymmetry
    {"kind": "poset", "leq": [[0, 0], [0, 1]]},                       # reflexivity
    {"kind": "ordered_poset", "leq": [[1, 1], [0, 1]], "order": [1, 0]},
    {"kind": "lattice", "meet": [[0, 0], [0, 1]], "join": [[0, 0], [0, 1]]},
    {"kind": "multiposet", "leq": [[[1, 1], [0, 1]], [[1, 0], [1, 1]]],
     "template": {"leq": [[1, 0], [0, 1]]}},
])
def test_invariant_violations(doc):
    with pytest.raises(StructureViolation):
        structure_from_dict(doc)


def test_template_must_be_poset():
    with pytest.raises(StructureFormatError):
        template_from_dict(structure_to_dict(LinearlyOrderedPoset.chain(2)))
    assert template_from_dict({"leq": [[1]]}).n == 1
