"""Per-flight evidence assembly.

A bundle gathers everything one entry request needs: the vehicle spec with
defaults applied, a weather snapshot when one is available and trustworthy,
the pilot record, the mission plan, and the declared battery state. Missing
sources never fail assembly; they surface as unresolved parameter names so
a partially instantiated safety case stays useful.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from datetime import datetime
from typing import Optional, TYPE_CHECKING

from .pilots import PilotRecord, PilotRegistry
from .vehicles import VehicleRegistry, VehicleSpec, apply_spec_defaults, overlay_declared
from .weather import WeatherSnapshot, parse_timestamp

if TYPE_CHECKING:
    from ..cases.request import FlightRequest


class MissionPurpose(str, enum.Enum):
    RECREATIONAL = "recreational"
    SEARCH_AND_RESCUE = "searchAndRescue"
    DELIVERY = "delivery"


@dataclass(frozen=True)
class MissionPlan:
    mission_id: str
    purpose: MissionPurpose
    planned_duration: float  # minutes
    vlos: bool
    airspace_id: str
    requested_start: datetime

    def __post_init__(self) -> None:
        if self.planned_duration <= 0:
            raise ValueError("planned duration must be positive")

    @classmethod
    def from_doc(cls, doc: dict) -> "MissionPlan":
        return cls(
            mission_id=doc["missionId"],
            purpose=MissionPurpose(doc["purpose"]),
            planned_duration=float(doc["plannedDuration"]),
            vlos=bool(doc["vlos"]),
            airspace_id=doc["airspaceId"],
            requested_start=parse_timestamp(doc["requestedStart"]),
        )


@dataclass(frozen=True)
class BatteryState:
    """Pilot-declared battery state; fully charged means fraction 1.0."""

    charge_fraction: float
    provenance: str = "pilot-declared"

    def __post_init__(self) -> None:
        if not 0.0 <= self.charge_fraction <= 1.0:
            raise ValueError("charge fraction must lie in [0, 1]")

    @classmethod
    def from_doc(cls, doc: Optional[dict]) -> Optional["BatteryState"]:
        if doc is None:
            return None
        if doc.get("fullyCharged"):
            return cls(charge_fraction=1.0)
        if "chargeFraction" in doc:
            return cls(charge_fraction=float(doc["chargeFraction"]))
        return None


@dataclass(frozen=True)
class Regulation:
    """Airspace-policy values that bind regulation-sourced parameters."""

    regulations_id: str = "default-regulations"
    required_certification: str = "part107"
    min_flight_hours: float = 10.0
    min_visibility_km: float = 3.0
    required_charge_fraction: float = 1.0


@dataclass(frozen=True)
class EvidenceBundle:
    vehicle: VehicleSpec
    weather: Optional[WeatherSnapshot]
    pilot: Optional[PilotRecord]  # registry record; None for unknown pilots
    pilot_id: str
    mission: MissionPlan
    battery: Optional[BatteryState]
    unresolved: frozenset[str]


def assemble_bundle(
    request: "FlightRequest",
    registry: VehicleRegistry,
    provider,
    pilots: PilotRegistry,
) -> EvidenceBundle:
    """Resolve every evidence source for a request; missing data is recorded,
    never fatal."""
    from .params import unresolved_parameters

    spec = registry.lookup(request.vehicle_model)
    if request.declared_spec_overrides:
        spec = overlay_declared(spec, request.declared_spec_overrides)
    spec = apply_spec_defaults(spec)

    snapshot = provider.fetch(request.mission.airspace_id, request.mission.requested_start)
    pilot = pilots.get(request.pilot_id)
    battery = request.battery_state

    bundle = EvidenceBundle(
        vehicle=spec,
        weather=snapshot,
        pilot=pilot,
        pilot_id=request.pilot_id,
        mission=request.mission,
        battery=battery,
        unresolved=frozenset(),
    )
    return replace(bundle, unresolved=unresolved_parameters(bundle))
