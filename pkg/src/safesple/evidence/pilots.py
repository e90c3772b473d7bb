"""Pilot records: certifications, experience, and incident history."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union


@dataclass(frozen=True)
class PilotRecord:
    pilot_id: str
    certifications: frozenset[str] = frozenset()
    flight_hours: float = 0.0
    adverse_history: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.flight_hours < 0:
            raise ValueError("flight hours must be non-negative")


class PilotRegistry:
    def __init__(self, records: dict[str, PilotRecord]):
        self._records = records

    @classmethod
    def load(cls, path: Union[str, Path]) -> "PilotRegistry":
        doc = json.loads(Path(path).read_text())
        records = {}
        for entry in doc:
            record = PilotRecord(
                pilot_id=entry["pilotId"],
                certifications=frozenset(entry.get("certifications", ())),
                flight_hours=float(entry.get("flightHours", 0)),
                adverse_history=tuple(entry.get("adverseHistory", ())),
            )
            records[record.pilot_id] = record
        return cls(records)

    def get(self, pilot_id: str) -> Optional[PilotRecord]:
        return self._records.get(pilot_id)
