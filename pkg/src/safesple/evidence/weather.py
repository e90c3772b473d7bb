"""Weather snapshots and providers.

The fixture provider reads a JSON document of per-airspace forecast
windows. Snapshots requested beyond the provider's forecast horizon come
back flagged unreliable; the pipeline treats their values as unresolved
evidence. A remote HTTP provider with the same contract is available for
deployments with a live service.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional, Protocol, Union

from .vehicles import PrecipitationLevel

UNLIMITED_VISIBILITY = math.inf


class ProviderError(Exception):
    """Transport-level failure, distinct from 'no data for that query'."""


def parse_timestamp(text: str) -> datetime:
    ts = datetime.fromisoformat(text.replace("Z", "+00:00"))
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts


@dataclass(frozen=True)
class WeatherSnapshot:
    surface_wind: float  # m/s
    gusts: float  # m/s
    temperature: float  # degrees C
    visibility: float  # km; math.inf when unlimited
    precipitation: PrecipitationLevel
    observed_at: datetime
    source: str
    reliable: bool = True

    def __post_init__(self) -> None:
        if self.gusts < self.surface_wind:
            raise ValueError("gusts cannot be below the surface wind")
        if self.visibility < 0:
            raise ValueError("visibility must be non-negative")


def _visibility_from_doc(value: Union[float, str]) -> float:
    if value == "unlimited":
        return UNLIMITED_VISIBILITY
    return float(value)


class WeatherProvider(Protocol):
    def fetch(self, airspace_id: str, at: datetime) -> Optional[WeatherSnapshot]: ...


class FixtureWeatherProvider:
    """File-backed provider used by tests and the bundled fixtures."""

    def __init__(self, doc: dict, source: str = "fixture"):
        self.now = parse_timestamp(doc["now"])
        self.horizon_hours = float(doc.get("horizonHours", 72))
        self.airspaces = doc.get("airspaces", {})
        self.source = source

    @classmethod
    def load(cls, path: Union[str, Path]) -> "FixtureWeatherProvider":
        path = Path(path)
        try:
            return cls(json.loads(path.read_text()), source=f"fixture:{path.name}")
        except OSError as exc:
            raise ProviderError(f"cannot read weather fixture {path}: {exc}") from exc
        except (json.JSONDecodeError, KeyError) as exc:
            raise ProviderError(f"malformed weather fixture {path}: {exc}") from exc

    def fetch(self, airspace_id: str, at: datetime) -> Optional[WeatherSnapshot]:
        windows = self.airspaces.get(airspace_id)
        if not windows:
            return None
        hours_ahead = (at - self.now).total_seconds() / 3600.0
        reliable = hours_ahead <= self.horizon_hours
        for window in windows:
            start = parse_timestamp(window["from"])
            end = parse_timestamp(window["to"])
            if start <= at <= end:
                return WeatherSnapshot(
                    surface_wind=float(window["surfaceWind"]),
                    gusts=float(window["gusts"]),
                    temperature=float(window["temperature"]),
                    visibility=_visibility_from_doc(window["visibility"]),
                    precipitation=PrecipitationLevel.parse(window["precipitation"]),
                    observed_at=at,
                    source=self.source,
                    reliable=reliable,
                )
        return None


class HttpWeatherProvider:
    """Remote provider speaking the same window document over HTTP."""

    def __init__(self, base_url: str, timeout: float = 5.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def fetch(self, airspace_id: str, at: datetime) -> Optional[WeatherSnapshot]:
        import httpx

        try:
            response = httpx.get(
                f"{self.base_url}/weather",
                params={"airspace": airspace_id, "at": at.isoformat()},
                timeout=self.timeout,
            )
        except httpx.HTTPError as exc:
            raise ProviderError(f"weather service unreachable: {exc}") from exc
        if response.status_code == 404:
            return None
        if response.status_code != 200:
            raise ProviderError(f"weather service returned {response.status_code}")
        doc = response.json()
        return WeatherSnapshot(
            surface_wind=float(doc["surfaceWind"]),
            gusts=float(doc["gusts"]),
            temperature=float(doc["temperature"]),
            visibility=_visibility_from_doc(doc["visibility"]),
            precipitation=PrecipitationLevel.parse(doc["precipitation"]),
            observed_at=at,
            source=self.base_url,
            reliable=bool(doc.get("reliable", True)),
        )
