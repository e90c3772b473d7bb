"""Append-only on-disk store for requests, instances, and decisions.

One JSON document per artifact, keyed by id, plus a journal of store events.
Documents are written once and never rewritten; a second write with the
same id must carry identical content.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional, Union


class NotFoundError(Exception):
    pass


class StoreConflictError(Exception):
    """Same id written twice with different content."""


class RequestStore:
    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        for sub in ("requests", "cases", "decisions"):
            (self.root / sub).mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._journal = self.root / "journal.ndjson"

    def _path(self, kind: str, key: str) -> Path:
        return self.root / kind / f"{key}.json"

    def _write(self, kind: str, key: str, doc: dict) -> None:
        text = json.dumps(doc, indent=2, sort_keys=True, default=str)
        with self._lock:
            path = self._path(kind, key)
            if path.exists():
                if path.read_text() != text:
                    raise StoreConflictError(f"{kind}/{key} already stored with different content")
                return
            path.write_text(text)
            with self._journal.open("a") as journal:
                journal.write(json.dumps({"event": "stored", "kind": kind, "key": key}) + "\n")

    def _read(self, kind: str, key: str) -> dict:
        path = self._path(kind, key)
        if not path.exists():
            raise NotFoundError(f"no stored {kind[:-1]} with id {key!r}")
        return json.loads(path.read_text())

    def has_request(self, request_id: str) -> bool:
        return self._path("requests", request_id).exists()

    def put_request(self, request_id: str, payload: dict) -> None:
        self._write("requests", request_id, payload)

    def get_request(self, request_id: str) -> dict:
        return self._read("requests", request_id)

    def put_case(self, request_id: str, instances: list[dict]) -> None:
        self._write("cases", request_id, {"requestId": request_id, "instances": instances})

    def get_case(self, request_id: str) -> list[dict]:
        return self._read("cases", request_id)["instances"]

    def put_decision(self, request_id: str, decision: dict) -> None:
        self._write("decisions", request_id, decision)

    def get_decision(self, request_id: str) -> dict:
        return self._read("decisions", request_id)
