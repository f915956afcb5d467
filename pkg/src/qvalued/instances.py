"""JSON instance and configuration files.

Instance schema (version 1)::

    {"schema_version": 1, "m": 2, "n": 2, "Q": 2,
     "anchors": [{"x": [0.0, 1.0], "value": [[0.0, -1.0], [0.0, 1.0]]}, ...],
     "point": [0.0, 0.0]}

``point`` is optional. A configuration file holds one value::

    {"schema_version": 1, "n": 2, "Q": 2, "atoms": [[0.0, 1.0], [0.0, -1.0]]}

Floats are written with ``repr`` so a parse/serialize round trip is bit exact.
"""
from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

from .errors import InstanceFormatError, NonLipschitzError
from .lipmap import AnchoredMap
from .qspace import QConfig, canonicalize

SCHEMA_VERSION = 1


def _load(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _int_field(doc, key):
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise InstanceFormatError(f"{key}: expected a positive integer, got {v!r}")
    return v


def _vector(obj, length, where):
    if not isinstance(obj, list) or len(obj) != length:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise InstanceFormatError(f"{where}: expected {length} numbers, got {got}")
    for j, v in enumerate(obj):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
            raise InstanceFormatError(f"{where}[{j}]: expected a finite number, got {v!r}")
    return [float(v) for v in obj]


def _atoms(obj, Q, n, where):
    if not isinstance(obj, list) or len(obj) != Q:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise InstanceFormatError(f"{where}: expected {Q} atoms, got {got}")
    return [_vector(a, n, f"{where}[{j}]") for j, a in enumerate(obj)]


def _check_version(doc):
    if not isinstance(doc, dict):
        raise InstanceFormatError("top level: expected a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InstanceFormatError(
            f"schema_version: expected {SCHEMA_VERSION}, got {doc.get('schema_version')!r}")


def parse_instance(text):
    """Return ``(AnchoredMap, point or None)`` from instance JSON text."""
    doc = _load(text)
    _check_version(doc)
    m, n, Q = (_int_field(doc, key) for key in ("m", "n", "Q"))
    anchors = doc.get("anchors")
    if not isinstance(anchors, list) or not anchors:
        raise InstanceFormatError("anchors: expected a nonempty list")
    points, values = [], []
    for i, a in enumerate(anchors):
        if not isinstance(a, dict):
            raise InstanceFormatError(f"anchors[{i}]: expected an object")
        points.append(_vector(a.get("x"), m, f"anchors[{i}].x"))
        values.append(_atoms(a.get("value"), Q, n, f"anchors[{i}].value"))
    try:
        fmap = AnchoredMap(points, values)
    except NonLipschitzError as exc:
        raise InstanceFormatError(f"anchors: {exc}") from None
    point = doc.get("point")
    if point is not None:
        point = np.array(_vector(point, m, "point"))
    return fmap, point


def _dump(doc, list_keys):
    # one line per anchor keeps files diffable without exploding every float
    lines = ["{"]
    items = list(doc.items())
    for pos, (key, val) in enumerate(items):
        comma = "," if pos < len(items) - 1 else ""
        if key in list_keys:
            lines.append(f"  {json.dumps(key)}: [")
            for j, entry in enumerate(val):
                tail = "," if j < len(val) - 1 else ""
                lines.append(f"    {json.dumps(entry)}{tail}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(val)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def serialize_instance(fmap, point=None):
    doc = {
        "schema_version": SCHEMA_VERSION,
        "m": fmap.m,
        "n": fmap.n,
        "Q": fmap.Q,
        "anchors": [{"x": fmap.points[i].tolist(), "value": fmap.values[i].tolist()}
                    for i in range(fmap.k)],
    }
    if point is not None:
        doc["point"] = np.asarray(point, dtype=float).tolist()
    return _dump(doc, {"anchors"})


def parse_config(text):
    """Return a canonical QConfig from configuration JSON text."""
    doc = _load(text)
    _check_version(doc)
    n, Q = _int_field(doc, "n"), _int_field(doc, "Q")
    return canonicalize(QConfig(_atoms(doc.get("atoms"), Q, n, "atoms")))


def serialize_config(config):
    c = canonicalize(config)
    return _dump({"schema_version": SCHEMA_VERSION, "n": c.n, "Q": c.Q,
                  "atoms": c.atoms.tolist()}, {"atoms"})


def hexagon_fixture_text():
    return resources.files("qvalued").joinpath("data/hexagon.json").read_text(encoding="utf-8")
