"""JSON structure files.

A document looks like::

    {"kind": "poset" | "ordered_poset" | "lattice" | "multiposet",
     "labels": [...],
     "leq": [[bool]]            # poset, ordered_poset; a list of matrices for multiposet
     "meet": [[label]], "join": [[label]],   # lattice
     "order": [label, ...],     # ordered_poset; optional for multiposet
     "template": {poset document}}           # multiposet

Labels are any JSON values; they are mapped to indices 0..n-1 in the order
listed.  Every parsed structure is validated and a violation is reported as
:class:`StructureFormatError` carrying the violation text.
"""
from __future__ import annotations

import json
from typing import Any

from .multiposets import Multiposet, Template, validate_multiposet
from .structures import FiniteLattice, FinitePoset, LinearlyOrderedPoset, to_mask

KINDS = ("poset", "ordered_poset", "lattice", "multiposet")


class StructureFormatError(ValueError):
    pass


class StructureViolation(StructureFormatError):
    """Well-formed document whose structure breaks an invariant."""


def _key(label) -> str:
    return json.dumps(label, sort_keys=True)


def _labels(doc: dict, n_hint: int | None) -> list:
    labels = doc.get("labels")
    if labels is None:
        if n_hint is None:
            raise StructureFormatError("missing 'labels'")
        labels = list(range(n_hint))
    if not isinstance(labels, list):
        raise StructureFormatError("'labels' must be a list")
    if len({_key(x) for x in labels}) != len(labels):
        raise StructureFormatError("duplicate labels")
    return labels


def _matrix(m, n: int, what: str) -> tuple[int, ...]:
    if not isinstance(m, list) or len(m) != n or any(not isinstance(r, list) or len(r) != n for r in m):
        raise StructureFormatError(f"'{what}' must be an {n}x{n} matrix")
    rows = []
    for r in m:
        if any(not isinstance(x, (bool, int)) or x not in (0, 1) for x in r):
            raise StructureFormatError(f"'{what}' entries must be booleans")
        rows.append(to_mask(j for j, x in enumerate(r) if x))
    return tuple(rows)


def _index_list(seq, index: dict, what: str) -> tuple[int, ...]:
    if not isinstance(seq, list):
        raise StructureFormatError(f"'{what}' must be a list of labels")
    try:
        return tuple(index[_key(x)] for x in seq)
    except KeyError as e:
        raise StructureFormatError(f"unknown label {e.args[0]} in '{what}'") from None


def _check(s, violation):
    if violation is not None:
        raise StructureViolation(f"invalid {s}: {violation}")


def structure_from_dict(doc: Any):
    """Parse and validate; returns (structure, labels)."""
    if not isinstance(doc, dict):
        raise StructureFormatError("a structure document must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise StructureFormatError(f"'kind' must be one of {', '.join(KINDS)}")
    n_hint = None
    if kind == "lattice" and isinstance(doc.get("meet"), list):
        n_hint = len(doc["meet"])
    elif kind == "multiposet" and isinstance(doc.get("leq"), list) and doc["leq"]:
        n_hint = len(doc["leq"][0]) if isinstance(doc["leq"][0], list) else None
    elif isinstance(doc.get("leq"), list):
        n_hint = len(doc["leq"])
    labels = _labels(doc, n_hint)
    n = len(labels)
    index = {_key(x): i for i, x in enumerate(labels)}

    if kind in ("poset", "ordered_poset"):
        p = FinitePoset(n, _matrix(doc.get("leq"), n, "leq"))
        if kind == "poset":
            _check(kind, p.find_violation())
            return p, labels
        s = LinearlyOrderedPoset(p, _index_list(doc.get("order"), index, "order"))
        _check(kind, s.find_violation())
        return s, labels

    if kind == "lattice":
        tables = []
        for op in ("meet", "join"):
            t = doc.get(op)
            if not isinstance(t, list) or len(t) != n:
                raise StructureFormatError(f"'{op}' must be an {n}x{n} table of labels")
            tables.append(tuple(_index_list(r, index, op) for r in t))
        if any(len(r) != n for t in tables for r in t):
            raise StructureFormatError("operation tables must be square")
        lat = FiniteLattice(tables[0], tables[1])
        _check(kind, lat.find_violation())
        return lat, labels

    if "template" not in doc:
        raise StructureFormatError("a multiposet needs a 'template'")
    template = template_from_dict(doc["template"])
    mats = doc.get("leq")
    if not isinstance(mats, list):
        raise StructureFormatError("multiposet 'leq' must be a list of matrices")
    orders = tuple(_matrix(m, n, "leq") for m in mats)
    order = _index_list(doc["order"], index, "order") if doc.get("order") is not None else None
    m = Multiposet(n, orders, order)
    _check(kind, validate_multiposet(m, template))
    return m, labels


def template_from_dict(doc: Any) -> Template:
    if isinstance(doc, dict) and "kind" not in doc:
        doc = dict(doc, kind="poset")
    p, _ = structure_from_dict(doc)
    if not isinstance(p, FinitePoset):
        raise StructureFormatError("a template must be a poset")
    return Template(p)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise StructureFormatError(f"malformed JSON: {e}") from None
    return structure_from_dict(doc)


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise StructureFormatError(f"cannot read {path}: {e.strerror}") from None
    return loads(text)


def _bool_matrix(rows, n: int) -> list[list[bool]]:
    return [[bool(rows[i] >> j & 1) for j in range(n)] for i in range(n)]


def structure_to_dict(s, labels: list | None = None, template: Template | None = None) -> dict:
    labels = list(range(s.n)) if labels is None else list(labels)
    if isinstance(s, FinitePoset):
        return {"kind": "poset", "labels": labels, "leq": _bool_matrix(s.up, s.n)}
    if isinstance(s, LinearlyOrderedPoset):
        return {"kind": "ordered_poset", "labels": labels, "leq": _bool_matrix(s.poset.up, s.n),
                "order": [labels[e] for e in s.order]}
    if isinstance(s, FiniteLattice):
        return {"kind": "lattice", "labels": labels,
                "meet": [[labels[x] for x in r] for r in s.meet],
                "join": [[labels[x] for x in r] for r in s.join]}
    if isinstance(s, Multiposet):
        doc = {"kind": "multiposet", "labels": labels,
               "leq": [_bool_matrix(r, s.n) for r in s.orders],
               "order": None if s.order is None else [labels[e] for e in s.order]}
        if template is not None:
            doc["template"] = structure_to_dict(template.poset)
        return doc
    raise TypeError(f"cannot serialize {type(s).__name__}")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"
