"""Entry decisions, what-if re-evaluation, persistence, policy properties."""

import json
import random

import pytest

from safesple.cases import FlightRequest
from safesple.paths import sample_requests_dir
from safesple.service import (
    EntryPipeline,
    InvalidConfigurationError,
    NotFoundError,
    PolicyError,
    ValidationError,
    Verdict,
)
from safesple.service.policy import PolicySet


def load_payload(name: str, **overrides) -> dict:
    payload = json.loads((sample_requests_dir() / f"{name}.json").read_text())
    payload.update(overrides)
    return payload


def open_access_policy(tmp_path):
    doc = {"airspaces": {"A1": {
        "mode": "openAccess", "minFlightHours": 10, "minVisibilityKm": 3,
        "requiredCertifications": ["part107"], "forecastHorizonHours": 72,
    }}}
    path = tmp_path / "open.json"
    path.write_text(json.dumps(doc))
    return path


@pytest.fixture()
def pipeline(tmp_path):
    return EntryPipeline(store_dir=tmp_path / "store")


class TestClosedAccess:
    def test_instance1_admit(self, pipeline):
        result = pipeline.submit(load_payload("instance1"))
        assert result.decision.verdict is Verdict.ADMIT

    def test_instance2_deny_cites_e4(self, pipeline):
        result = pipeline.submit(load_payload("instance2"))
        assert result.decision.verdict is Verdict.DENY
        entries = result.decision.advisory.entries
        assert [e.node_id for e in entries] == ["E4"]

    def test_experienced_pilot_admit_on_pilot_case(self, pipeline):
        result = pipeline.submit(load_payload("instance2", pilotId="alex-p107"))
        assert result.decision.verdict is Verdict.ADMIT
        assert len(result.pairs) == 1
        assert result.pairs[0][0].template_id == "pilot-entry"

    def test_beyond_horizon_denies_with_reevaluate(self, pipeline):
        payload = load_payload("instance1", mission={
            "missionId": "m-future", "purpose": "recreational", "plannedDuration": 16,
            "vlos": True, "airspaceId": "A1", "requestedStart": "2026-07-01T10:00:00Z",
        })
        result = pipeline.submit(payload)
        assert result.decision.verdict is Verdict.DENY
        assert result.decision.advisory.re_evaluate
        assert "re-evaluate" in result.decision.note


class TestOpenAccess:
    def test_certified_pilot_with_bad_wind_gets_advisory(self, tmp_path):
        pipeline = EntryPipeline(policy_path=open_access_policy(tmp_path),
                                 store_dir=tmp_path / "store")
        result = pipeline.submit(load_payload("instance2", pilotId="alex-p107"))
        assert result.decision.verdict is Verdict.ADMIT_WITH_ADVISORY
        assert [e.node_id for e in result.decision.advisory.entries] == ["E4"]

    def test_certified_pilot_with_good_wind_plain_admit(self, tmp_path):
        pipeline = EntryPipeline(policy_path=open_access_policy(tmp_path),
                                 store_dir=tmp_path / "store")
        result = pipeline.submit(load_payload("instance1", pilotId="alex-p107"))
        assert result.decision.verdict is Verdict.ADMIT

    def test_uncertified_pilot_denied(self, tmp_path):
        pipeline = EntryPipeline(policy_path=open_access_policy(tmp_path),
                                 store_dir=tmp_path / "store")
        result = pipeline.submit(load_payload("instance1"))  # casey-new
        assert result.decision.verdict is Verdict.DENY
        assert result.decision.advisory is not None

    def test_flagged_pilot_denied(self, tmp_path):
        pipeline = EntryPipeline(policy_path=open_access_policy(tmp_path),
                                 store_dir=tmp_path / "store")
        result = pipeline.submit(load_payload("instance1", pilotId="jordan-flagged"))
        assert result.decision.verdict is Verdict.DENY


class TestWhatIf:
    def test_calmer_gusts_flip_to_admit(self, pipeline):
        payload = load_payload("instance2")
        pipeline.submit(payload)
        request_id = FlightRequest.from_payload(payload).request_id
        result = pipeline.what_if(request_id, {"gusts": 3})
        assert result.hypothetical
        assert result.decision.verdict is Verdict.ADMIT
        wind = next(i for i in result.instances if i.template_id == "wind-entry")
        assert wind.node_statuses["E4"].value == "satisfied"

    def test_better_vehicle_flips_to_admit(self, pipeline):
        payload = load_payload("instance2")
        pipeline.submit(payload)
        request_id = FlightRequest.from_payload(payload).request_id
        result = pipeline.what_if(request_id, {"vehicleModel": "DJI Mini 4 Pro"})
        assert result.decision.verdict is Verdict.ADMIT

    def test_stored_request_unmodified(self, pipeline):
        payload = load_payload("instance2")
        pipeline.submit(payload)
        request_id = FlightRequest.from_payload(payload).request_id
        before = pipeline.get_decision(request_id)
        pipeline.what_if(request_id, {"gusts": 3})
        assert pipeline.get_decision(request_id) == before
        assert pipeline.get_request(request_id) == payload

    def test_unknown_request_raises(self, pipeline):
        with pytest.raises(NotFoundError):
            pipeline.what_if("req-nope", {"gusts": 3})

    def test_malformed_override_raises(self, pipeline):
        payload = load_payload("instance2")
        pipeline.submit(payload)
        request_id = FlightRequest.from_payload(payload).request_id
        with pytest.raises(ValidationError):
            pipeline.what_if(request_id, {"warpSpeed": 9})


class TestStore:
    def test_idempotent_resubmission(self, pipeline):
        payload = load_payload("instance1")
        first = pipeline.submit(payload)
        second = pipeline.submit(payload)
        assert first.request.request_id == second.request.request_id
        assert first.decision_doc() == second.decision_doc()

    def test_same_id_different_content_rejected(self, pipeline):
        payload = load_payload("instance1", requestId="req-fixed")
        pipeline.submit(payload)
        changed = load_payload("instance1", requestId="req-fixed")
        changed["mission"]["plannedDuration"] = 20
        with pytest.raises(ValidationError):
            pipeline.submit(changed)

    def test_get_before_submit_raises(self, pipeline):
        with pytest.raises(NotFoundError):
            pipeline.get_case("req-nothing")

    def test_invalid_configuration_rejected(self, pipeline):
        payload = load_payload("instance1")
        payload["configuration"] = {
            "selected": ["Sparse", "Congested"], "deselected": [], "partial": True}
        with pytest.raises(InvalidConfigurationError) as err:
            pipeline.submit(payload)
        assert any("xor(Sparse, Congested)" in v for v in err.value.violations)

    def test_missing_policy_airspace_raises(self, pipeline):
        payload = load_payload("instance1")
        payload["mission"]["airspaceId"] = "Z9"
        with pytest.raises(PolicyError):
            pipeline.submit(payload)

    def test_audit_deny_references_leaf_with_trace(self, pipeline):
        result = pipeline.submit(load_payload("instance2"))
        advisory = result.decision.advisory
        assert advisory is not None and advisory.entries
        wind = next(t for i, t in result.pairs if i.template_id == "wind-entry")
        for entry in advisory.entries:
            assert entry.node_id in wind.nodes


class TestPolicyMonotonicity:
    def test_improving_weather_never_flips_admit_to_deny(self, pipeline):
        # start from the failing instance-2 conditions and improve one axis at a time
        payload = load_payload("instance2")
        pipeline.submit(payload)
        request_id = FlightRequest.from_payload(payload).request_id
        rng = random.Random(5150)
        base = {"gusts": 8.0, "temperature": 35.0, "visibility": 3.0}
        for _ in range(40):
            overrides = {
                "gusts": rng.uniform(0, base["gusts"]),
                "temperature": rng.uniform(20, base["temperature"]),
                "visibility": rng.uniform(base["visibility"], 50),
            }
            first = pipeline.what_if(request_id, overrides)
            improved = dict(overrides)
            axis = rng.choice(sorted(overrides))
            if axis == "gusts":
                improved["gusts"] = rng.uniform(0, overrides["gusts"])
            elif axis == "visibility":
                improved["visibility"] = overrides["visibility"] + rng.uniform(0, 10)
            else:
                center = (0 + 40) / 2
                improved["temperature"] = overrides["temperature"] + (
                    center - overrides["temperature"]) * rng.random()
            second = pipeline.what_if(request_id, improved)
            if first.decision.verdict is Verdict.ADMIT:
                assert second.decision.verdict is Verdict.ADMIT


class TestDefaultPolicyFile:
    def test_bundled_policies_load(self):
        from safesple.paths import default_policy_path

        policies = PolicySet.load(default_policy_path())
        assert policies.get("A1").mode.value == "closedAccess"
        assert policies.get("A2-open").mode.value == "openAccess"
        with pytest.raises(PolicyError):
            policies.get("nowhere")
