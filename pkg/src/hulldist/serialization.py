"""JSON schemas for compact sets and reports.

CompactSet schema:
    {"primitives": [{"type": "point", "xy": [x, y]}
                    | {"type": "segment", "a": [..], "b": [..]}
                    | {"type": "polygon", "vertices": [[..], ..]}]}
"""

import json

import numpy as np

from .errors import InvalidInput
from .geometry import CompactSet, ConvexPolygon, Segment


def compact_set_to_json(S: CompactSet) -> dict:
    prims = []
    for p in S.primitives:
        if isinstance(p, Segment):
            prims.append({"type": "segment", "a": p.a.tolist(), "b": p.b.tolist()})
        elif isinstance(p, ConvexPolygon):
            prims.append({"type": "polygon", "vertices": p.vertices.tolist()})
        else:
            prims.append({"type": "point", "xy": p.tolist()})
    return {"primitives": prims}


def compact_set_from_json(obj) -> CompactSet:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "primitives" not in obj:
        raise InvalidInput("compact set JSON must have a 'primitives' list")
    prims = []
    for item in obj["primitives"]:
        t = item.get("type")
        if t == "point":
            prims.append(np.asarray(item["xy"], dtype=float))
        elif t == "segment":
            prims.append(Segment(item["a"], item["b"]))
        elif t == "polygon":
            prims.append(ConvexPolygon(np.asarray(item["vertices"], dtype=float)))
        else:
            raise InvalidInput(f"unknown primitive type {t!r}")
    return CompactSet(tuple(prims))


def dumps_report(obj) -> str:
    """Serialize a report deterministically; floats round-trip exactly."""

    def convert(x):
        if isinstance(x, np.ndarray):
            return x.tolist()
        if isinstance(x, (np.floating,)):
            return float(x)
        if isinstance(x, (np.integer,)):
            return int(x)
        if isinstance(x, (np.bool_,)):
            return bool(x)
        if isinstance(x, dict):
            return {k: convert(v) for k, v in x.items()}
        if isinstance(x, (list, tuple)):
            return [convert(v) for v in x]
        return x

    return json.dumps(convert(obj), indent=2, sort_keys=True)
