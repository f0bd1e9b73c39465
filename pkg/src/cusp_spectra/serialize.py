"""JSON with 17 significant digits and complex numbers as {"re", "im"}.

``dumps`` writes every float with 17 significant digits so that ``loads``
returns the identical double.  ``from_dict`` rebuilds the report dataclasses.
"""

from __future__ import annotations

import dataclasses
import json
import math

import numpy as np


def to_plain(obj):
    """Dataclasses, tuples, numpy scalars and complex numbers to JSON-ready structures."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = format(x, ".17g")
    # keep floats recognizable as floats after parsing
    return text if any(c in text for c in ".en") else text + ".0"


def _write(obj, parts: list):
    if obj is None:
        parts.append("null")
    elif obj is True:
        parts.append("true")
    elif obj is False:
        parts.append("false")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        parts.append(_float(obj))
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            parts.append(json.dumps(k) + ": ")
            _write(v, parts)
        parts.append("}")
    elif isinstance(obj, list):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(", ")
            _write(v, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    parts: list = []
    _write(to_plain(obj), parts)
    return "".join(parts)


def loads(text: str):
    return json.loads(text)


def _complex_or(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(v["re"], v["im"])
    return v


def from_dict(cls, d: dict):
    """Rebuild a flat report dataclass; {"re", "im"} pairs become complex, lists become tuples."""
    kwargs = {}
    for f in dataclasses.fields(cls):
        if f.name not in d:
            continue
        v = _complex_or(d[f.name])
        if isinstance(v, list):
            v = tuple(_complex_or(x) for x in v)
        elif isinstance(v, dict):
            v = {k: _complex_or(x) for k, x in v.items()}
        kwargs[f.name] = v
    return cls(**kwargs)
