"""Canonical JSON serialization used for content-derived identifiers.

Bindings can hold ordered precipitation levels and unlimited (infinite)
visibility; both need a stable JSON form before hashing.
"""

from __future__ import annotations

import hashlib
import json
import math
from datetime import datetime

from .evidence.vehicles import PrecipitationLevel


def value_to_doc(value):
    """JSON-safe form of a binding value."""
    if isinstance(value, PrecipitationLevel):
        return value.label
    if isinstance(value, float) and math.isinf(value):
        return "unlimited"
    if isinstance(value, datetime):
        return value.isoformat()
    return value


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=value_to_doc)


def content_id(prefix: str, obj) -> str:
    digest = hashlib.sha256(canonical_json(obj).encode()).hexdigest()
    return f"{prefix}-{digest[:16]}"
