"""Per-airspace entry policies.

Closed access gates entry on the safety case passing; open access gates it
on pilot certification and standing, with the wind case attached as an
advisory checklist. The minimum-flight-hours default of 10 is a placeholder
policy knob, not a regulatory value; operators set it per airspace.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from ..evidence.bundle import Regulation


class PolicyError(Exception):
    pass


class PolicyMode(str, enum.Enum):
    CLOSED_ACCESS = "closedAccess"
    OPEN_ACCESS = "openAccess"


@dataclass(frozen=True)
class AirspacePolicy:
    airspace_id: str
    mode: PolicyMode
    min_flight_hours: float = 10.0
    min_visibility_km: float = 3.0
    required_certifications: frozenset[str] = frozenset({"part107"})
    forecast_horizon_hours: float = 72.0

    def __post_init__(self) -> None:
        for name in ("min_flight_hours", "min_visibility_km", "forecast_horizon_hours"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def regulation(self) -> Regulation:
        certs = sorted(self.required_certifications)
        return Regulation(
            regulations_id=f"{self.airspace_id}-regulations",
            required_certification=certs[0] if certs else "part107",
            min_flight_hours=self.min_flight_hours,
            min_visibility_km=self.min_visibility_km,
        )

    @classmethod
    def from_doc(cls, airspace_id: str, doc: dict) -> "AirspacePolicy":
        if "mode" not in doc:
            raise PolicyError(f"policy for {airspace_id!r} does not set a mode")
        return cls(
            airspace_id=airspace_id,
            mode=PolicyMode(doc["mode"]),
            min_flight_hours=float(doc.get("minFlightHours", 10)),
            min_visibility_km=float(doc.get("minVisibilityKm", 3)),
            required_certifications=frozenset(doc.get("requiredCertifications", ["part107"])),
            forecast_horizon_hours=float(doc.get("forecastHorizonHours", 72)),
        )


class PolicySet:
    def __init__(self, policies: dict[str, AirspacePolicy]):
        self._policies = policies

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PolicySet":
        doc = json.loads(Path(path).read_text())
        policies = {
            airspace_id: AirspacePolicy.from_doc(airspace_id, entry)
            for airspace_id, entry in doc.get("airspaces", {}).items()
        }
        return cls(policies)

    def get(self, airspace_id: str) -> AirspacePolicy:
        policy = self._policies.get(airspace_id)
        if policy is None:
            raise PolicyError(f"no policy configured for airspace {airspace_id!r}")
        return policy

    def airspace_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._policies))
