"""Reading and writing instance files.

An instance is a JSON object with exactly the keys ``elements``, ``plus`` and
``minus``; the orders are lists of ``[smaller, larger]`` label pairs and need
not be transitively closed.
"""
from __future__ import annotations

import json
from typing import Any

from .double_poset import DoublePoset
from .errors import ParseError, UnknownLabel
from .poset import Poset, build_poset, covers

KEYS = ("elements", "plus", "minus")


def _label(x: Any) -> str:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"labels must be strings, got {x!r}")
    return str(x)


def _pairs(raw: Any, key: str, index: dict[str, int]) -> list[tuple[int, int]]:
    if not isinstance(raw, list):
        raise ParseError(f"'{key}' must be a list of label pairs")
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"'{key}' entry {pair!r} is not a pair")
        ids = []
        for x in pair:
            name = _label(x)
            if name not in index:
                raise UnknownLabel(f"'{key}' mentions undeclared label {name!r}")
            ids.append(index[name])
        out.append((ids[0], ids[1]))
    return out


def instance_from_dict(data: Any) -> DoublePoset:
    if not isinstance(data, dict):
        raise ParseError("an instance must be a JSON object")
    missing = [k for k in KEYS if k not in data]
    if missing:
        raise ParseError(f"missing key(s): {', '.join(missing)}")
    extra = sorted(set(data) - set(KEYS))
    if extra:
        raise ParseError(f"unexpected key(s): {', '.join(extra)}")
    if not isinstance(data["elements"], list):
        raise ParseError("'elements' must be a list of labels")
    labels = [_label(x) for x in data["elements"]]
    if len(set(labels)) != len(labels):
        raise ParseError("element labels must be unique")
    index = {name: i for i, name in enumerate(labels)}
    n = len(labels)
    plus = build_poset(n, _pairs(data["plus"], "plus", index))
    minus = build_poset(n, _pairs(data["minus"], "minus", index))
    return DoublePoset(plus, minus, tuple(labels))


def parse_instance(text: str) -> DoublePoset:
    """Parse instance text; raises ParseError, UnknownLabel or CycleError."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from None
    return instance_from_dict(data)


def load_instance(path: str) -> DoublePoset:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return parse_instance(text)


def instance_to_dict(D: DoublePoset) -> dict:
    def rel(P: Poset):
        return [[D.labels[p], D.labels[q]] for p, q in covers(P)]

    return {"elements": list(D.labels), "plus": rel(D.plus), "minus": rel(D.minus)}


def render_instance(D: DoublePoset) -> str:
    """Canonical text for D (cover relations only); parse_instance inverts it."""
    return json.dumps(instance_to_dict(D))
