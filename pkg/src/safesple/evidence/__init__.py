from .vehicles import (
    PILOT_DECLARED_REQUIRED,
    PrecipitationLevel,
    VLOS_REQUIRED,
    VehicleRegistry,
    VehicleSpec,
    apply_spec_defaults,
)
from .weather import (
    FixtureWeatherProvider,
    HttpWeatherProvider,
    ProviderError,
    WeatherSnapshot,
)
from .pilots import PilotRecord, PilotRegistry
from .bundle import (
    BatteryState,
    EvidenceBundle,
    MissionPlan,
    Regulation,
    assemble_bundle,
)
from .params import resolve_parameters, unresolved_parameters

__all__ = [
    "BatteryState",
    "EvidenceBundle",
    "FixtureWeatherProvider",
    "HttpWeatherProvider",
    "MissionPlan",
    "PILOT_DECLARED_REQUIRED",
    "PilotRecord",
    "PilotRegistry",
    "PrecipitationLevel",
    "ProviderError",
    "Regulation",
    "VLOS_REQUIRED",
    "VehicleRegistry",
    "VehicleSpec",
    "WeatherSnapshot",
    "apply_spec_defaults",
    "assemble_bundle",
    "resolve_parameters",
    "unresolved_parameters",
]
