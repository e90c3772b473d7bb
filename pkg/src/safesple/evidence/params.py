"""The standard catalog parameter vocabulary and its evidence resolvers.

Each resolver turns a bundle plus the airspace regulation values into a
(value, provenance) pair, or None when the backing source is missing. The
same table drives bundle `unresolved` sets, instantiation bindings, and
required-evidence listings, so they can never disagree.
"""

from __future__ import annotations

from typing import Callable, Optional

from .bundle import EvidenceBundle, Regulation
from .vehicles import VLOS_REQUIRED

Binding = tuple[object, str]
Resolver = Callable[[EvidenceBundle, Regulation], Optional[Binding]]

WEATHER_FIELD_PARAMS = {
    "SurfaceWind": "surface_wind",
    "WindGusts": "gusts",
    "Temperature": "temperature",
    "Visibility": "visibility",
    "Precipitation": "precipitation",
}

VEHICLE_FIELD_PARAMS = {
    "MaxAllowedWindSpd": "max_wind_speed",
    "UASMinTemp": "temp_min",
    "UASMaxTemp": "temp_max",
    "UASAllowedPrecipitation": "allowed_precipitation",
    "MaxFlightTime": "max_flight_time",
}


def _weather_resolver(field: str) -> Resolver:
    def resolve(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
        snapshot = bundle.weather
        if snapshot is None or not snapshot.reliable:
            return None
        return getattr(snapshot, field), "weather-service"

    return resolve


def _vehicle_resolver(field: str) -> Resolver:
    def resolve(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
        value = getattr(bundle.vehicle, field)
        if value is None:
            return None
        return value, bundle.vehicle.provenance.get(field, "published")

    return resolve


def _required_visibility(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
    requirement = bundle.vehicle.visibility_requirement
    if requirement is None:
        return None
    provenance = bundle.vehicle.provenance.get("visibility_requirement", "published")
    if requirement == VLOS_REQUIRED:
        # the VLOS marker resolves to the airspace's minimum sight distance
        return regulation.min_visibility_km, provenance
    return float(requirement), provenance


def _charge_fraction(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
    if bundle.battery is None:
        return None
    return bundle.battery.charge_fraction, bundle.battery.provenance


def _available_flight_time(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
    if bundle.battery is None or bundle.vehicle.max_flight_time is None:
        return None
    return bundle.vehicle.max_flight_time * bundle.battery.charge_fraction, "derived"


def _pilot_certification(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
    record = bundle.pilot
    if record is None:
        return None
    if record.adverse_history:
        value = "suspended"  # prior incidents revoke the certification shortcut
    elif regulation.required_certification in record.certifications:
        value = regulation.required_certification
    else:
        value = "none"
    return value, "pilot-registry"


def _pilot_flight_hours(bundle: EvidenceBundle, regulation: Regulation) -> Optional[Binding]:
    if bundle.pilot is None:
        return None
    return bundle.pilot.flight_hours, "pilot-registry"


RESOLVERS: dict[str, Resolver] = {
    "Airspace": lambda b, r: (b.mission.airspace_id, "mission"),
    "Vehicle": lambda b, r: (b.vehicle.model, "pilot-declared"),
    "Pilot": lambda b, r: (b.pilot_id, "pilot-declared"),
    "Mission": lambda b, r: (b.mission.mission_id, "mission"),
    "Regulations": lambda b, r: (r.regulations_id, "regulation"),
    "PlannedDuration": lambda b, r: (b.mission.planned_duration, "mission"),
    "RequiredCertification": lambda b, r: (r.required_certification, "regulation"),
    "MinFlightHours": lambda b, r: (r.min_flight_hours, "regulation"),
    "RequiredVisibility": _required_visibility,
    "ChargeFraction": _charge_fraction,
    "AvailableFlightTime": _available_flight_time,
    "PilotCertification": _pilot_certification,
    "PilotFlightHours": _pilot_flight_hours,
    **{param: _weather_resolver(field) for param, field in WEATHER_FIELD_PARAMS.items()},
    **{param: _vehicle_resolver(field) for param, field in VEHICLE_FIELD_PARAMS.items()},
}


def resolve_parameters(
    bundle: EvidenceBundle,
    regulation: Optional[Regulation] = None,
    names: Optional[list[str]] = None,
) -> dict[str, Binding]:
    """Bindings for every resolvable parameter (restricted to `names` if given)."""
    regulation = regulation or Regulation()
    wanted = names if names is not None else sorted(RESOLVERS)
    out: dict[str, Binding] = {}
    for name in wanted:
        resolver = RESOLVERS.get(name)
        if resolver is None:
            continue
        binding = resolver(bundle, regulation)
        if binding is not None:
            out[name] = binding
    return out


def unresolved_parameters(bundle: EvidenceBundle) -> frozenset[str]:
    """Standard parameters whose backing source is missing from the bundle."""
    regulation = Regulation()
    return frozenset(
        name for name, resolver in RESOLVERS.items()
        if resolver(bundle, regulation) is None
    )
