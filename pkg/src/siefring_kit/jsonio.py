"""Deterministic JSON emission for reports.

Identical inputs must produce byte-identical output: keys are sorted,
integers print unformatted, floats at 17 significant digits.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import InputError


def _fmt(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not np.isfinite(x):
            raise InputError(f"non-finite float {x} in report")
        return format(x, ".17g")
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: str(kv[0]))
        body = ", ".join(f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(value, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    raise InputError(f"cannot serialize {type(value).__name__} deterministically")


def canonical_dumps(obj) -> str:
    return _fmt(obj) + "\n"
