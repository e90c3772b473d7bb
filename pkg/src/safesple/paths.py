"""Locations of the bundled data files (model, templates, fixtures, policies)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_dir() -> Path:
    return Path(str(resources.files("safesple").joinpath("data")))


def demo_model_path() -> Path:
    return data_dir() / "models" / "suas_entry.fm"


def template_dir() -> Path:
    return data_dir() / "templates"


def pilot_template_path() -> Path:
    return template_dir() / "pilot.json"


def wind_template_path() -> Path:
    return template_dir() / "wind.json"


def fixtures_dir() -> Path:
    return data_dir() / "fixtures"


def default_policy_path() -> Path:
    return data_dir() / "policies" / "default.json"


def sample_requests_dir() -> Path:
    return data_dir() / "requests"
