"""Flight-entry requests: the payload a pilot submits.

Request ids are content-derived when the payload does not provide one, so
resubmitting a byte-identical payload addresses the same stored request.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..canon import content_id
from ..evidence.bundle import BatteryState, MissionPlan
from ..fm.model import Configuration
from ..fm.parser import configuration_from_doc


class PayloadError(Exception):
    """Malformed request payload; `path` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class FlightRequest:
    request_id: str
    pilot_id: str
    vehicle_model: str
    mission: MissionPlan
    configuration: Configuration
    declared_spec_overrides: dict
    battery_state: Optional[BatteryState]
    payload: dict  # the exact submitted document, kept for storage and replay

    @classmethod
    def from_payload(cls, payload: dict) -> "FlightRequest":
        if not isinstance(payload, dict):
            raise PayloadError("$", "request payload must be a JSON object")
        for field_name in ("pilotId", "vehicleModel", "mission"):
            if field_name not in payload:
                raise PayloadError(field_name, "required field is missing")
        mission_doc = payload["mission"]
        if not isinstance(mission_doc, dict):
            raise PayloadError("mission", "must be an object")
        for field_name in ("missionId", "purpose", "plannedDuration", "vlos",
                           "airspaceId", "requestedStart"):
            if field_name not in mission_doc:
                raise PayloadError(f"mission.{field_name}", "required field is missing")
        try:
            mission = MissionPlan.from_doc(mission_doc)
        except (ValueError, TypeError) as exc:
            raise PayloadError("mission", str(exc)) from exc
        try:
            configuration = configuration_from_doc(payload.get("configuration", {}))
        except ValueError as exc:
            raise PayloadError("configuration", str(exc)) from exc
        try:
            battery = BatteryState.from_doc(payload.get("batteryState"))
        except (ValueError, TypeError) as exc:
            raise PayloadError("batteryState", str(exc)) from exc
        overrides = payload.get("declaredSpecOverrides", {})
        if not isinstance(overrides, dict):
            raise PayloadError("declaredSpecOverrides", "must be an object")
        request_id = payload.get("requestId") or content_id("req", payload)
        return cls(
            request_id=request_id,
            pilot_id=str(payload["pilotId"]),
            vehicle_model=str(payload["vehicleModel"]),
            mission=mission,
            configuration=configuration,
            declared_spec_overrides=overrides,
            battery_state=battery,
            payload=payload,
        )
