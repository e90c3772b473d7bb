"""The end-to-end entry pipeline shared by the CLI and the HTTP service.

submit -> assemble evidence -> select templates -> instantiate -> decide.
Artifacts (feature model, template catalog, fixtures, policies) load once;
each request evaluation is a pure function of the loaded state plus the
payload, so concurrent requests need no coordination beyond the store.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Optional, Union

from ..cases.instantiate import (
    Explanation,
    SafetyCaseInstance,
    instance_to_doc,
    instantiate,
    required_evidence,
    select_templates,
)
from ..cases.request import FlightRequest, PayloadError
from ..evidence.bundle import EvidenceBundle, assemble_bundle
from ..evidence.pilots import PilotRegistry
from ..evidence.vehicles import PrecipitationLevel, VehicleRegistry
from ..evidence.weather import FixtureWeatherProvider, WeatherSnapshot
from ..fm.analysis import Verdict as ConfigVerdict, check_configuration, count_variants
from ..fm.parser import parse_feature_model, unparse
from ..gsn.binding import BindingSchema, map_features_to_parameters
from ..gsn.catalog import load_template_file
from ..gsn.model import SafetyCaseTemplate
from ..logic import to_text
from ..paths import (
    default_policy_path,
    demo_model_path,
    fixtures_dir,
    pilot_template_path,
    wind_template_path,
)
from .decide import EntryDecision, decide
from .policy import PolicySet
from .store import NotFoundError, RequestStore


class ValidationError(Exception):
    pass


class InvalidConfigurationError(Exception):
    def __init__(self, violations: tuple[str, ...]):
        super().__init__("configuration violates the feature model: " + "; ".join(violations))
        self.violations = violations


WEATHER_OVERRIDE_KEYS = {"surfaceWind", "gusts", "temperature", "visibility", "precipitation"}
OVERRIDE_KEYS = WEATHER_OVERRIDE_KEYS | {"vehicleModel", "requestedStart", "declaredSpecOverrides"}


def _parse_visibility(value) -> float:
    if value == "unlimited":
        import math

        return math.inf
    return float(value)


class _OverlayWeatherProvider:
    """Wraps a provider, overriding snapshot fields for what-if evaluation."""

    def __init__(self, inner, overrides: dict):
        self.inner = inner
        self.overrides = overrides

    def fetch(self, airspace_id: str, at: datetime) -> Optional[WeatherSnapshot]:
        snapshot = self.inner.fetch(airspace_id, at)
        fields = {k: v for k, v in self.overrides.items() if k in WEATHER_OVERRIDE_KEYS}
        if not fields:
            return snapshot
        if snapshot is None:
            if not WEATHER_OVERRIDE_KEYS <= set(fields):
                raise ValidationError(
                    "no forecast exists for that time; a weather what-if must set "
                    "all of surfaceWind, gusts, temperature, visibility, precipitation"
                )
            base = {}
        else:
            base = {
                "surfaceWind": snapshot.surface_wind,
                "gusts": snapshot.gusts,
                "temperature": snapshot.temperature,
                "visibility": snapshot.visibility,
                "precipitation": snapshot.precipitation,
            }
        base.update(fields)
        # hypothesizing one wind figure must not break gusts >= surface wind
        if "gusts" in fields and "surfaceWind" not in fields:
            base["surfaceWind"] = min(float(base["surfaceWind"]), float(base["gusts"]))
        elif "surfaceWind" in fields and "gusts" not in fields:
            base["gusts"] = max(float(base["gusts"]), float(base["surfaceWind"]))
        try:
            return WeatherSnapshot(
                surface_wind=float(base["surfaceWind"]),
                gusts=float(base["gusts"]),
                temperature=float(base["temperature"]),
                visibility=_parse_visibility(base["visibility"]),
                precipitation=(
                    base["precipitation"]
                    if isinstance(base["precipitation"], PrecipitationLevel)
                    else PrecipitationLevel.parse(str(base["precipitation"]))
                ),
                observed_at=at,
                source="what-if",
                reliable=True,  # hypothetical conditions are evaluated as stated
            )
        except (ValueError, KeyError) as exc:
            raise ValidationError(f"bad weather override: {exc}") from exc


@dataclass
class PipelineResult:
    request: FlightRequest
    bundle: EvidenceBundle
    pairs: list[tuple[SafetyCaseInstance, SafetyCaseTemplate]]
    decision: EntryDecision
    hypothetical: bool = False

    @property
    def instances(self) -> list[SafetyCaseInstance]:
        return [instance for instance, _ in self.pairs]

    def case_docs(self) -> list[dict]:
        return [instance_to_doc(instance, template) for instance, template in self.pairs]

    def decision_doc(self) -> dict:
        return decision_to_doc(self.decision, hypothetical=self.hypothetical)


def explanation_to_doc(explanation: Explanation) -> dict:
    return {
        "instanceId": explanation.instance_id,
        "templateId": explanation.template_id,
        "reEvaluate": explanation.re_evaluate,
        "entries": [
            {
                "nodeId": entry.node_id,
                "status": entry.status.value,
                "condition": entry.condition,
                "goalChain": list(entry.goal_chain),
            }
            for entry in explanation.entries
        ],
    }


def decision_to_doc(decision: EntryDecision, *, hypothetical: bool = False) -> dict:
    doc = {
        "requestId": decision.request_id,
        "verdict": decision.verdict.value,
        "policyMode": decision.policy_mode.value,
        "decidedAt": decision.decided_at,
        "basisInstanceIds": list(decision.basis_instance_ids),
        "note": decision.note,
        "advisory": explanation_to_doc(decision.advisory) if decision.advisory else None,
    }
    if hypothetical:
        doc["hypothetical"] = True
    return doc


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class EntryPipeline:
    def __init__(
        self,
        fixtures: Optional[Union[str, Path]] = None,
        policy_path: Optional[Union[str, Path]] = None,
        store_dir: Optional[Union[str, Path]] = None,
        model_path: Optional[Union[str, Path]] = None,
        clock: Optional[Callable[[], str]] = None,
    ):
        fixtures = Path(fixtures) if fixtures else fixtures_dir()
        self.model_source = Path(model_path or demo_model_path()).read_text()
        self.model = parse_feature_model(self.model_source)
        self.catalog: dict[str, SafetyCaseTemplate] = {}
        for path in (pilot_template_path(), wind_template_path()):
            template = load_template_file(path)
            self.catalog[template.template_id] = template
        self.schemas: dict[str, BindingSchema] = {
            template_id: map_features_to_parameters(self.model, template, {})
            for template_id, template in self.catalog.items()
        }
        self.vehicles = VehicleRegistry.load(fixtures / "vehicles")
        self.weather = FixtureWeatherProvider.load(fixtures / "weather.json")
        self.pilots = PilotRegistry.load(fixtures / "pilots.json")
        self.policies = PolicySet.load(policy_path or default_policy_path())
        self.store = RequestStore(store_dir) if store_dir else None
        self.clock = clock or _utc_now
        self._variant_count = count_variants(self.model)

    # --- evaluation -------------------------------------------------------

    def evaluate_payload(
        self,
        payload: dict,
        overrides: Optional[dict] = None,
        hypothetical: bool = False,
        at: Optional[str] = None,
    ) -> PipelineResult:
        try:
            request = FlightRequest.from_payload(payload)
        except PayloadError as exc:
            raise ValidationError(str(exc)) from exc
        report = check_configuration(self.model, request.configuration)
        if report.verdict is ConfigVerdict.INVALID:
            raise InvalidConfigurationError(report.violations)

        overrides = dict(overrides or {})
        unknown = set(overrides) - OVERRIDE_KEYS
        if unknown:
            raise ValidationError(f"unknown what-if override keys: {sorted(unknown)}")
        if "vehicleModel" in overrides:
            request = replace(request, vehicle_model=str(overrides["vehicleModel"]))
        if "declaredSpecOverrides" in overrides:
            merged = dict(request.declared_spec_overrides)
            extra = overrides["declaredSpecOverrides"]
            if not isinstance(extra, dict):
                raise ValidationError("declaredSpecOverrides override must be an object")
            merged.update(extra)
            request = replace(request, declared_spec_overrides=merged)
        if "requestedStart" in overrides:
            from ..evidence.weather import parse_timestamp

            try:
                new_start = parse_timestamp(str(overrides["requestedStart"]))
            except ValueError as exc:
                raise ValidationError(f"bad requestedStart override: {exc}") from exc
            request = replace(request, mission=replace(request.mission,
                                                       requested_start=new_start))
        provider = self.weather
        if any(key in WEATHER_OVERRIDE_KEYS for key in overrides):
            provider = _OverlayWeatherProvider(self.weather, overrides)

        try:
            bundle = assemble_bundle(request, self.vehicles, provider, self.pilots)
        except ValidationError:
            raise
        except ValueError as exc:
            raise ValidationError(str(exc)) from exc
        policy = self.policies.get(request.mission.airspace_id)
        regulation = policy.regulation()
        now = at if at is not None else self.clock()
        selected = select_templates(request, self.catalog, pilot=bundle.pilot, policy=policy)
        pairs = []
        for template_id in selected:
            template = self.catalog[template_id]
            instance = instantiate(
                template,
                self.schemas[template_id],
                bundle,
                configuration=request.configuration,
                regulation=regulation,
                generated_at=now,
            )
            pairs.append((instance, template))
        decision = decide(request, policy, pairs, pilot=bundle.pilot, decided_at=now)
        return PipelineResult(request=request, bundle=bundle, pairs=pairs,
                              decision=decision, hypothetical=hypothetical)

    # --- persistent surface -----------------------------------------------

    def _require_store(self) -> RequestStore:
        if self.store is None:
            raise RuntimeError("pipeline was created without a store directory")
        return self.store

    def submit(self, payload: dict) -> PipelineResult:
        """Validate, evaluate, persist; resubmitting identical payloads is idempotent."""
        store = self._require_store()
        try:
            request_id = FlightRequest.from_payload(payload).request_id
        except PayloadError as exc:
            raise ValidationError(str(exc)) from exc
        if store.has_request(request_id):
            stored = store.get_request(request_id)
            if stored != payload:
                raise ValidationError(
                    f"requestId {request_id!r} already used with different content"
                )
            return self._rebuild_result(request_id)
        result = self.evaluate_payload(payload)
        store.put_request(request_id, payload)
        store.put_case(request_id, result.case_docs())
        store.put_decision(request_id, result.decision_doc())
        return result

    def _rebuild_result(self, request_id: str) -> PipelineResult:
        """Re-evaluate a stored request at its original decision time.

        Instantiation is deterministic, so replaying with the stored timestamp
        reproduces the stored documents byte for byte.
        """
        store = self._require_store()
        payload = store.get_request(request_id)
        decided_at = store.get_decision(request_id)["decidedAt"]
        return self.evaluate_payload(payload, at=decided_at)

    def what_if(self, request_id: str, overrides: dict) -> PipelineResult:
        """Hypothetical re-evaluation; the stored request is not modified."""
        store = self._require_store()
        payload = store.get_request(request_id)  # NotFoundError if missing
        return self.evaluate_payload(payload, overrides=overrides, hypothetical=True)

    def get_request(self, request_id: str) -> dict:
        return self._require_store().get_request(request_id)

    def get_case(self, request_id: str) -> list[dict]:
        return self._require_store().get_case(request_id)

    def get_decision(self, request_id: str) -> dict:
        return self._require_store().get_decision(request_id)

    # --- catalog and model documents ---------------------------------------

    def template_docs(self) -> list[dict]:
        return [
            {
                "templateId": template.template_id,
                "version": template.version,
                "rootGoal": template.root_goal,
                "nodeCount": len(template.nodes),
                "solutionNodes": list(template.solution_ids()),
            }
            for template_id, template in sorted(self.catalog.items())
        ]

    def required_evidence_doc(self, template_id: str) -> dict:
        template = self.catalog.get(template_id)
        if template is None:
            raise NotFoundError(f"no template {template_id!r}")
        listing = required_evidence(template)
        return {
            "templateId": listing.template_id,
            "items": [
                {
                    "nodeId": item.node_id,
                    "parameters": list(item.parameters),
                    "condition": item.condition,
                    "unresolved": item.unresolved,
                }
                for item in listing.items
            ],
        }

    def feature_model_doc(self) -> dict:
        return {
            "name": self.model.name,
            "root": self.model.root,
            "featureCount": len(self.model.features),
            "variantCount": self._variant_count,
            "features": [
                {
                    "name": feature.name,
                    "parent": feature.parent,
                    "optionality": feature.optionality.value if feature.optionality else None,
                    "groupKind": feature.group_kind.value,
                    "abstract": feature.is_abstract,
                }
                for feature in self.model.features.values()
            ],
            "constraints": [to_text(c) for c in self.model.cross_tree_constraints],
            "hazards": [
                {
                    "hazardId": trace.hazard_id,
                    "description": trace.description,
                    "contributingFeatures": list(trace.contributing_features),
                    "mitigatingFeatures": list(trace.mitigating_features),
                    "templateNodeIds": list(trace.template_node_ids),
                }
                for trace in self.model.hazard_traces
            ],
            "source": unparse(self.model),
        }
