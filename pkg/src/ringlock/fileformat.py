"""Protocol file format.

A protocol file is a JSON object::

    {
      "name": "coloring-det",           # optional label
      "m": 3,                           # domain size, integer >= 2
      "topology": "symmetric",          # or "ring11"
      "transitions": [[0, 0, 1], ...]   # symmetric only
      "p0_transitions": [...],          # ring11 only: table of P_0
      "other_transitions": [...]        # ring11 only: table of P_1..P_K-1
    }

Each transition is ``[pred, own, written]``.  Unknown fields are rejected.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import canonical, find_violations
from .protocols import RING11, SYMMETRIC, ProtocolSpec


class ProtocolFileError(ValueError):
    def __init__(self, problems: list[str], source: str = "<input>"):
        self.problems = list(problems)
        self.source = source
        super().__init__(f"{source}: " + "; ".join(self.problems))


_FIELDS = {
    SYMMETRIC: {"name", "m", "topology", "transitions"},
    RING11: {"name", "m", "topology", "p0_transitions", "other_transitions"},
}


def parse_protocol(text: str, source: str = "<input>") -> ProtocolSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProtocolFileError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"], source) from None
    if not isinstance(doc, dict):
        raise ProtocolFileError(["top level must be an object"], source)

    problems = []
    topology = doc.get("topology")
    if topology not in _FIELDS:
        raise ProtocolFileError([f"field 'topology': expected 'symmetric' or 'ring11', got {topology!r}"], source)
    for key in sorted(set(doc) - _FIELDS[topology]):
        problems.append(f"field {key!r}: not allowed for topology {topology!r}")

    m = doc.get("m")
    m_ok = isinstance(m, int) and not isinstance(m, bool) and m >= 2
    if not m_ok:
        problems.append(f"field 'm': expected an integer >= 2, got {m!r}")
    name = doc.get("name", "")
    if not isinstance(name, str):
        problems.append(f"field 'name': expected a string, got {name!r}")

    tables = ["transitions"] if topology == SYMMETRIC else ["p0_transitions", "other_transitions"]
    for key in tables:
        if key not in doc:
            problems.append(f"field {key!r}: missing")
        elif not isinstance(doc[key], list):
            problems.append(f"field {key!r}: expected a list of [pred, own, written] triples")
        elif m_ok:
            for issue in find_violations(m, [_tuple(x) for x in doc[key]]):
                problems.append(f"field {key!r}: {issue}")
    if problems:
        raise ProtocolFileError(problems, source)

    if topology == SYMMETRIC:
        return ProtocolSpec.symmetric(m, [tuple(x) for x in doc["transitions"]], name=name)
    return ProtocolSpec.ring11(
        m,
        [tuple(x) for x in doc["p0_transitions"]],
        [tuple(x) for x in doc["other_transitions"]],
        name=name,
    )


def _tuple(x):
    return tuple(x) if isinstance(x, list) else x


def load_protocol(path) -> ProtocolSpec:
    path = Path(path)
    return parse_protocol(path.read_text(), str(path))


def _table(ts) -> str:
    rows = [f"    [{t.pred}, {t.own}, {t.written}]" for t in canonical(ts)]
    if not rows:
        return "[]"
    return "[\n" + ",\n".join(rows) + "\n  ]"


def emit_protocol(spec: ProtocolSpec) -> str:
    """Serialize ``spec`` with one transition per line, in canonical order."""
    head = [f'  "name": {json.dumps(spec.name)}', f'  "m": {spec.m}', f'  "topology": "{spec.topology}"']
    if spec.topology == SYMMETRIC:
        body = [f'  "transitions": {_table(spec.transitions)}']
    else:
        body = [
            f'  "p0_transitions": {_table(spec.t0)}',
            f'  "other_transitions": {_table(spec.t_other)}',
        ]
    return "{\n" + ",\n".join(head + body) + "\n}\n"
