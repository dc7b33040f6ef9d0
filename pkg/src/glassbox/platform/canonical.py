"""Canonical JSON: sorted keys, fixed 17-significant-digit floats.

The canonical form is the content-hash input for the model store, so it
must be byte-stable across runs and platforms. Floats use %.17g, which
round-trips every float64 exactly; integral floats therefore print without
a decimal point and parse back as ints, which every deserializer here
coerces as needed.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Any

from glassbox.errors import ValidationError


def _encode(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValidationError("canonical JSON forbids NaN/Inf")
        out.append(format(obj, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _encode(item, out)
        out.append("]")
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise ValidationError("canonical JSON keys must be strings")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _encode(obj[key], out)
        out.append("}")
    else:
        raise ValidationError(f"cannot canonicalize {type(obj).__name__}")


def canonical_json(obj: Any) -> str:
    parts: list[str] = []
    _encode(obj, parts)
    return "".join(parts)


def content_hash(obj: Any, length: int = 16) -> str:
    """Hex prefix of the SHA-256 of the canonical serialization."""
    digest = hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
    return digest[:length]
