"""Vehicle specifications: registry lookup and conservative default rules.

Published spec sheets rarely cover every limit. Missing wind tolerance
defaults to 3 m/s, missing precipitation tolerance to "none", and a missing
visibility requirement to a visual-line-of-sight marker; each filled field
is tagged provenance "default". Fields a source actually provides are never
overwritten.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Union


class PrecipitationLevel(enum.IntEnum):
    """Ordered: flying in light rain is easier to tolerate than heavy."""

    NONE = 0
    LIGHT = 1
    MODERATE = 2
    HEAVY = 3

    @classmethod
    def parse(cls, text: str) -> "PrecipitationLevel":
        return cls[text.upper()]

    @property
    def label(self) -> str:
        return self.name.lower()


# visibility requirement marker: no published distance, flight must stay VLOS
VLOS_REQUIRED = "VLOS"

PUBLISHED = "published"
PILOT_DECLARED = "pilot-declared"
DEFAULT = "default"

# lookup marker: unknown model, every field must come from the pilot
PILOT_DECLARED_REQUIRED = "pilot-declared-required"

DEFAULT_MAX_WIND_SPEED = 3.0  # m/s
DEFAULT_ALLOWED_PRECIPITATION = PrecipitationLevel.NONE

_DEFAULTED_FIELDS = ("max_wind_speed", "allowed_precipitation", "visibility_requirement")


@dataclass(frozen=True)
class VehicleSpec:
    model: str
    max_wind_speed: Optional[float] = None  # m/s
    temp_min: Optional[float] = None  # degrees C
    temp_max: Optional[float] = None
    max_flight_time: Optional[float] = None  # minutes
    allowed_precipitation: Optional[PrecipitationLevel] = None
    visibility_requirement: Optional[Union[float, str]] = None  # km or VLOS_REQUIRED
    provenance: dict[str, str] = field(default_factory=dict)
    pilot_declared_required: bool = False

    def __post_init__(self) -> None:
        if not self.model:
            raise ValueError("vehicle model name must be non-empty")
        if self.temp_min is not None and self.temp_max is not None:
            if self.temp_min >= self.temp_max:
                raise ValueError("temp_min must be below temp_max")
        for name in ("max_wind_speed", "max_flight_time"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")
        vis = self.visibility_requirement
        if isinstance(vis, (int, float)) and vis < 0:
            raise ValueError("visibility requirement must be non-negative")


def apply_spec_defaults(raw: VehicleSpec) -> VehicleSpec:
    """Fill missing wind/precipitation/visibility fields with conservative defaults."""
    updates: dict[str, object] = {}
    provenance = dict(raw.provenance)
    if raw.max_wind_speed is None:
        updates["max_wind_speed"] = DEFAULT_MAX_WIND_SPEED
        provenance["max_wind_speed"] = DEFAULT
    if raw.allowed_precipitation is None:
        updates["allowed_precipitation"] = DEFAULT_ALLOWED_PRECIPITATION
        provenance["allowed_precipitation"] = DEFAULT
    if raw.visibility_requirement is None:
        updates["visibility_requirement"] = VLOS_REQUIRED
        provenance["visibility_requirement"] = DEFAULT
    if not updates:
        return raw
    return replace(raw, provenance=provenance, **updates)


def spec_from_doc(doc: dict, default_provenance: str = PUBLISHED) -> VehicleSpec:
    """Build a spec from its JSON document; absent keys stay missing."""
    def grab(key: str):
        return doc.get(key)

    precip = grab("allowedPrecipitation")
    fields = {
        "max_wind_speed": grab("maxWindSpeed"),
        "temp_min": grab("tempMin"),
        "temp_max": grab("tempMax"),
        "max_flight_time": grab("maxFlightTime"),
        "allowed_precipitation": PrecipitationLevel.parse(precip) if precip is not None else None,
        "visibility_requirement": grab("visibilityRequirement"),
    }
    provenance = {name: default_provenance for name, value in fields.items() if value is not None}
    return VehicleSpec(model=doc["model"], provenance=provenance, **fields)


def overlay_declared(base: VehicleSpec, declared: dict) -> VehicleSpec:
    """Fill fields the base spec lacks with pilot-declared values.

    Present fields win over declarations; declaring a capability cannot
    relax a published limit.
    """
    if not declared:
        return base
    doc = {"model": base.model, **declared}
    declared_spec = spec_from_doc(doc, default_provenance=PILOT_DECLARED)
    updates: dict[str, object] = {}
    provenance = dict(base.provenance)
    for name in ("max_wind_speed", "temp_min", "temp_max", "max_flight_time",
                 "allowed_precipitation", "visibility_requirement"):
        if getattr(base, name) is None and getattr(declared_spec, name) is not None:
            updates[name] = getattr(declared_spec, name)
            provenance[name] = PILOT_DECLARED
    if not updates:
        return base
    return replace(base, provenance=provenance, **updates)


class VehicleRegistry:
    """Published spec sheets, one JSON document per model."""

    def __init__(self, specs: dict[str, VehicleSpec]):
        self._specs = specs

    @classmethod
    def load(cls, path: Union[str, Path]) -> "VehicleRegistry":
        path = Path(path)
        specs: dict[str, VehicleSpec] = {}
        files = sorted(path.glob("*.json")) if path.is_dir() else [path]
        for file in files:
            doc = json.loads(file.read_text())
            entries = doc if isinstance(doc, list) else [doc]
            for entry in entries:
                spec = spec_from_doc(entry)
                specs[spec.model] = spec
        return cls(specs)

    def lookup(self, model: str) -> VehicleSpec:
        """Spec with defaults applied; unknown models come back flagged
        pilot_declared_required with no fields filled."""
        spec = self._specs.get(model)
        if spec is None:
            return VehicleSpec(model=model, pilot_declared_required=True)
        return apply_spec_defaults(spec)

    def models(self) -> tuple[str, ...]:
        return tuple(sorted(self._specs))
