"""Acceptance suite: one test per shipped criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
Tolerances are exact-match unless a runtime bound is stated.
"""

import json
import random
import statistics
import time
from contextlib import contextmanager

import pytest

from safesple.cases import FlightRequest, NodeStatus, instantiate
from safesple.evidence import (
    BatteryState,
    EvidenceBundle,
    FixtureWeatherProvider,
    PilotRecord,
    PilotRegistry,
    PrecipitationLevel,
    VehicleRegistry,
    WeatherSnapshot,
    apply_spec_defaults,
)
from safesple.evidence.bundle import MissionPlan, MissionPurpose
from safesple.evidence.params import unresolved_parameters
from safesple.evidence.vehicles import DEFAULT, PUBLISHED, VLOS_REQUIRED, spec_from_doc
from safesple.evidence.weather import parse_timestamp
from safesple.fm import Configuration, count_variants, parse_feature_model, slice_count
from safesple.fm.analysis import submodel, to_propositional
from safesple.gsn import BindingSchema, load_template_file, pilot_template_path, wind_template_path
from safesple.logic import (
    count_models,
    is_satisfiable,
    truth_table_count,
    truth_table_models,
    truth_table_satisfiable,
    variables,
)
from safesple.paths import demo_model_path, fixtures_dir, sample_requests_dir
from safesple.service import EntryPipeline, Verdict

from helpers import random_feature_model
from test_logic import random_formula

PINNED_DEMO_VARIANTS = 746_496


@contextmanager
def criterion(name: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}")
        raise
    print(f"PASS  {name}  ({time.perf_counter() - started:.2f}s)")


def load_payload(name: str, **overrides) -> dict:
    payload = json.loads((sample_requests_dir() / f"{name}.json").read_text())
    payload.update(overrides)
    return payload


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    return EntryPipeline(store_dir=tmp_path_factory.mktemp("store"))


@pytest.fixture(scope="module")
def open_pipeline(tmp_path_factory):
    doc = {"airspaces": {"A1": {
        "mode": "openAccess", "minFlightHours": 10, "minVisibilityKm": 3,
        "requiredCertifications": ["part107"], "forecastHorizonHours": 72,
    }}}
    policy = tmp_path_factory.mktemp("policy") / "open.json"
    policy.write_text(json.dumps(doc))
    return EntryPipeline(policy_path=policy, store_dir=tmp_path_factory.mktemp("store2"))


def test_instance_1_reproduction(pipeline):
    with criterion("instance-1: DJI Mini 4 Pro, all solution nodes satisfied, admit"):
        started = time.perf_counter()
        result = pipeline.submit(load_payload("instance1"))
        elapsed = time.perf_counter() - started
        wind = next(i for i in result.instances if i.template_id == "wind-entry")
        for node_id in ("E1", "E2", "E3", "E4", "E5", "E6"):
            assert wind.node_statuses[node_id] is NodeStatus.SATISFIED
        assert wind.top_goal_status is NodeStatus.SATISFIED
        assert result.decision.verdict is Verdict.ADMIT
        assert result.decision.policy_mode.value == "closedAccess"
        assert elapsed < 1.0


def test_instance_2_reproduction(pipeline, open_pipeline):
    with criterion("instance-2: DEERC D20 fails exactly at E4; deny / advisory"):
        result = pipeline.submit(load_payload("instance2"))
        wind = next(i for i in result.instances if i.template_id == "wind-entry")
        assert wind.node_statuses["E4"] is NodeStatus.VIOLATED
        for node_id in ("E1", "E2", "E3", "E5", "E6"):
            assert wind.node_statuses[node_id] is NodeStatus.SATISFIED
        assert result.decision.verdict is Verdict.DENY
        cited = result.decision.advisory.entries
        assert [e.node_id for e in cited] == ["E4"]
        assert wind.bindings["MaxAllowedWindSpd"].value == 3.0
        assert wind.bindings["MaxAllowedWindSpd"].provenance == "default"

        open_result = open_pipeline.submit(load_payload("instance2", pilotId="alex-p107"))
        assert open_result.decision.verdict is Verdict.ADMIT_WITH_ADVISORY
        assert [e.node_id for e in open_result.decision.advisory.entries] == ["E4"]


def test_default_rules_exhaustive():
    with criterion("default rules: 3 m/s wind, none precipitation, VLOS marker"):
        from itertools import product

        for has_wind, has_precip, has_vis in product((False, True), repeat=3):
            doc = {"model": "combo"}
            if has_wind:
                doc["maxWindSpeed"] = 12.0
            if has_precip:
                doc["allowedPrecipitation"] = "moderate"
            if has_vis:
                doc["visibilityRequirement"] = 8.0
            spec = apply_spec_defaults(spec_from_doc(doc))
            if has_wind:
                assert spec.max_wind_speed == 12.0
                assert spec.provenance["max_wind_speed"] == PUBLISHED
            else:
                assert spec.max_wind_speed == 3.0
                assert spec.provenance["max_wind_speed"] == DEFAULT
            if has_precip:
                assert spec.allowed_precipitation is PrecipitationLevel.MODERATE
                assert spec.provenance["allowed_precipitation"] == PUBLISHED
            else:
                assert spec.allowed_precipitation is PrecipitationLevel.NONE
                assert spec.provenance["allowed_precipitation"] == DEFAULT
            if has_vis:
                assert spec.visibility_requirement == 8.0
                assert spec.provenance["visibility_requirement"] == PUBLISHED
            else:
                assert spec.visibility_requirement == VLOS_REQUIRED
                assert spec.provenance["visibility_requirement"] == DEFAULT


def test_logic_engine_oracle_suite():
    with criterion("logic oracle: 210 formulas + 50 feature models match enumeration"):
        started = time.perf_counter()
        rng = random.Random(20260314)
        checked = 0
        for max_vars in [6] * 80 + [8] * 40 + [10] * 30 + [12] * 30 + [14] * 20 + [16] * 10:
            f = random_formula(rng, max_vars=max_vars)
            over = variables(f)
            if not over:
                over = {"v0"}
            sat = is_satisfiable(f)
            assert (sat is not None) == truth_table_satisfiable(f)
            assert count_models(f, over, bigint=True) == truth_table_count(f, over)
            checked += 1
        assert checked == 210

        models_checked = 0
        for _ in range(50):
            model = random_feature_model(rng, max_features=rng.randint(4, 12))
            formula = to_propositional(model)
            names = model.concrete_names()
            oracle_models = truth_table_models(formula, names)
            assert count_variants(model) == len(oracle_models)
            for name in names:
                expected = sum(1 for m in oracle_models if m[name])
                got = slice_count(model, Configuration(selected=frozenset({name})))
                assert got == expected
            models_checked += 1
        assert models_checked == 50
        assert time.perf_counter() - started < 60.0


def test_xor_slice_partition():
    with criterion("xor partition: purpose slices sum to the variant count"):
        model = parse_feature_model(demo_model_path().read_text())
        total = count_variants(model)
        parts = [
            slice_count(model, Configuration(selected=frozenset({name})))
            for name in ("Recreational", "SearchAndRescue", "Delivery")
        ]
        assert sum(parts) == total


def test_demo_model_pinned_count():
    with criterion("demo model: pinned count stable and oracle-checked per subtree"):
        source = demo_model_path().read_text()
        first = count_variants(parse_feature_model(source))
        second = count_variants(parse_feature_model(source))
        assert first == second == PINNED_DEMO_VARIANTS

        # every projection stays within oracle range (<= 12 features); their
        # product re-derives the pinned total because the subtrees share no
        # cross-tree constraints
        model = parse_feature_model(source)
        slices = ("Pilot", "Mission", "Airspace", "Vehicle",
                  "Precipitation", "WindBand", "TemperatureBand", "VisibilityBand")
        product_of_slices = 1
        for root in slices:
            sub = submodel(model, root)
            assert len(sub.features) <= 12
            oracle = truth_table_count(to_propositional(sub), sub.concrete_names())
            assert count_variants(sub) == oracle
            product_of_slices *= oracle
        for constraint in model.cross_tree_constraints:
            owners = [root for root in slices
                      if variables(constraint) <= set(submodel(model, root).features)]
            assert owners, "a cross-tree constraint spans slice boundaries"
        assert product_of_slices == PINNED_DEMO_VARIANTS


def test_traceability_totality(pipeline, open_pipeline):
    with criterion("traceability: total trace links; denials cite failing leaves"):
        suite = [
            pipeline.submit(load_payload("instance1")),
            pipeline.submit(load_payload("instance2")),
            pipeline.submit(load_payload("instance2", pilotId="alex-p107")),
            open_pipeline.submit(load_payload("instance2", pilotId="alex-p107")),
            pipeline.submit(load_payload("instance1", mission={
                "missionId": "m-future", "purpose": "recreational",
                "plannedDuration": 16, "vlos": True, "airspaceId": "A1",
                "requestedStart": "2026-07-01T10:00:00Z",
            })),
        ]
        for result in suite:
            for instance, template in result.pairs:
                assert set(instance.trace_links) == set(template.nodes)
                assert all(t in template.nodes for t in instance.trace_links.values())
            if result.decision.verdict is not Verdict.ADMIT:
                advisory = result.decision.advisory
                assert advisory is not None and advisory.entries
                leaves = {e.node_id for e in advisory.entries}
                templates = {t.template_id: t for _, t in result.pairs}
                template = templates[advisory.template_id]
                assert leaves <= set(template.solution_ids())
                statuses = next(
                    i.node_statuses for i, _ in result.pairs
                    if i.template_id == advisory.template_id
                )
                assert all(statuses[leaf] is not NodeStatus.SATISFIED for leaf in leaves)


def test_partial_instantiation(pipeline):
    with criterion("partial instantiation: weather open, battery evaluated, re-evaluate"):
        payload = load_payload("instance1", mission={
            "missionId": "m-far", "purpose": "recreational", "plannedDuration": 16,
            "vlos": True, "airspaceId": "A1", "requestedStart": "2026-08-01T10:00:00Z",
        })
        result = pipeline.submit(payload)
        wind = next(i for i in result.instances if i.template_id == "wind-entry")
        for node_id in ("E1", "E2", "E3", "E4"):
            assert wind.node_statuses[node_id] is NodeStatus.UNRESOLVED
        for node_id in ("E5", "E6"):
            assert wind.node_statuses[node_id] is NodeStatus.SATISFIED
        assert wind.top_goal_status is NodeStatus.UNRESOLVED
        assert result.decision.verdict is Verdict.DENY
        assert result.decision.advisory.re_evaluate
        assert "re-evaluate" in result.decision.note


def _random_bundle(rng: random.Random):
    """A bundle with a random subset of evidence sources present."""
    doc = {"model": "rand-vehicle"}
    if rng.random() < 0.7:
        doc["maxWindSpeed"] = rng.uniform(2, 12)
    if rng.random() < 0.7:
        doc["maxFlightTime"] = rng.uniform(5, 40)
    if rng.random() < 0.7:
        doc["tempMin"] = rng.uniform(-20, 0)
        doc["tempMax"] = rng.uniform(10, 45)
    if rng.random() < 0.5:
        doc["visibilityRequirement"] = rng.uniform(1, 8)
    vehicle = apply_spec_defaults(spec_from_doc(doc))

    weather = None
    if rng.random() < 0.6:
        surface = rng.uniform(0, 8)
        weather = WeatherSnapshot(
            surface_wind=surface,
            gusts=surface + rng.uniform(0, 5),
            temperature=rng.uniform(-15, 45),
            visibility=rng.choice([rng.uniform(0.5, 20), float("inf")]),
            precipitation=rng.choice(list(PrecipitationLevel)),
            observed_at=parse_timestamp("2026-03-14T10:00:00Z"),
            source="random",
        )
    pilot = None
    if rng.random() < 0.6:
        pilot = PilotRecord(
            pilot_id="p-rand",
            certifications=frozenset(rng.choice([["part107"], []])),
            flight_hours=rng.uniform(0, 200),
            adverse_history=tuple(rng.choice([[], ["incident"]])),
        )
    battery = BatteryState(charge_fraction=rng.uniform(0.2, 1.0)) if rng.random() < 0.6 else None
    mission = MissionPlan(
        mission_id="m-rand",
        purpose=MissionPurpose.RECREATIONAL,
        planned_duration=rng.uniform(2, 40),
        vlos=True,
        airspace_id="A1",
        requested_start=parse_timestamp("2026-03-14T10:00:00Z"),
    )
    bundle = EvidenceBundle(
        vehicle=vehicle, weather=weather, pilot=pilot, pilot_id="p-rand",
        mission=mission, battery=battery, unresolved=frozenset(),
    )
    return _with_unresolved(bundle)


def _with_unresolved(bundle: EvidenceBundle) -> EvidenceBundle:
    from dataclasses import replace

    return replace(bundle, unresolved=unresolved_parameters(bundle))


def _extend_bundle(rng: random.Random, bundle: EvidenceBundle) -> EvidenceBundle:
    """Add evidence for missing sources without touching existing values."""
    from dataclasses import replace

    weather = bundle.weather
    if weather is None and rng.random() < 0.8:
        surface = rng.uniform(0, 8)
        weather = WeatherSnapshot(
            surface_wind=surface,
            gusts=surface + rng.uniform(0, 5),
            temperature=rng.uniform(-15, 45),
            visibility=rng.choice([rng.uniform(0.5, 20), float("inf")]),
            precipitation=rng.choice(list(PrecipitationLevel)),
            observed_at=bundle.mission.requested_start,
            source="added",
        )
    pilot = bundle.pilot
    if pilot is None and rng.random() < 0.8:
        pilot = PilotRecord(
            pilot_id=bundle.pilot_id,
            certifications=frozenset(rng.choice([["part107"], []])),
            flight_hours=rng.uniform(0, 200),
            adverse_history=(),
        )
    battery = bundle.battery
    if battery is None and rng.random() < 0.8:
        battery = BatteryState(charge_fraction=rng.uniform(0.2, 1.0))
    vehicle = bundle.vehicle
    if vehicle.max_flight_time is None and rng.random() < 0.8:
        from safesple.evidence.vehicles import overlay_declared

        vehicle = overlay_declared(vehicle, {"maxFlightTime": rng.uniform(5, 40)})
    if vehicle.temp_min is None and rng.random() < 0.8:
        from safesple.evidence.vehicles import overlay_declared

        vehicle = overlay_declared(
            vehicle, {"tempMin": rng.uniform(-20, 0), "tempMax": rng.uniform(10, 45)})
    return _with_unresolved(replace(
        bundle, vehicle=vehicle, weather=weather, pilot=pilot, battery=battery))


def test_monotonic_resolution_property():
    with criterion("monotonic resolution: added evidence never flips decided nodes"):
        rng = random.Random(777)
        templates = [load_template_file(wind_template_path()),
                     load_template_file(pilot_template_path())]
        schemas = {
            t.template_id: BindingSchema(
                template_id=t.template_id, feature_classes={},
                evidence_sourced=frozenset(t.parameters))
            for t in templates
        }
        decided = {NodeStatus.SATISFIED, NodeStatus.VIOLATED}
        for _ in range(100):
            before_bundle = _random_bundle(rng)
            after_bundle = _extend_bundle(rng, before_bundle)
            for template in templates:
                before = instantiate(template, schemas[template.template_id], before_bundle)
                after = instantiate(template, schemas[template.template_id], after_bundle)
                for node_id, status in before.node_statuses.items():
                    if status in decided:
                        assert after.node_statuses[node_id] == status, (
                            f"{template.template_id}/{node_id} flipped "
                            f"{status} -> {after.node_statuses[node_id]}"
                        )


def test_end_to_end_latency(tmp_path_factory):
    with criterion("latency: submit-to-decision median < 100 ms over 100 runs"):
        pipeline = EntryPipeline(store_dir=tmp_path_factory.mktemp("latency-store"))
        durations = []
        for i in range(100):
            payload = load_payload("instance1" if i % 2 == 0 else "instance2")
            payload["requestId"] = f"req-latency-{i:03d}"
            started = time.perf_counter()
            result = pipeline.submit(payload)
            durations.append(time.perf_counter() - started)
            assert result.decision is not None
        median = statistics.median(durations)
        assert median < 0.100, f"median {median * 1000:.1f} ms"
