"""Feature-model parsing and analysis against the enumeration oracle."""

import random

import pytest

from safesple.fm import (
    Configuration,
    GroupKind,
    InvalidSelectionError,
    ParseError,
    SemanticError,
    Verdict,
    check_configuration,
    count_variants,
    parse_feature_model,
    slice_count,
    submodel,
    to_propositional,
    unparse,
)
from safesple.fm.model import Feature, FeatureModel, Optionality
from safesple.logic import truth_table_count, truth_table_models

from helpers import demo_model, random_feature_model

# pinned at build time from the enumeration oracle (subtree products);
# tests/test_acceptance.py re-derives it per 12-or-fewer-feature slices
DEMO_VARIANT_COUNT = 746_496


class TestParser:
    def test_single_feature_model(self):
        m = parse_feature_model("model M\nfeature Root {}")
        assert m.root == "Root"
        assert len(m.features) == 1
        assert m.features["Root"].optionality is Optionality.MANDATORY
        assert count_variants(m) == 1

    def test_demo_model_has_51_features(self):
        assert len(demo_model().features) == 51

    def test_demo_model_cross_tree_constraint_present(self):
        from safesple.logic import ExactlyOne, Var

        m = demo_model()
        assert ExactlyOne(Var("Sparse"), Var("Congested")) in m.cross_tree_constraints

    def test_parse_error_carries_position(self):
        with pytest.raises(ParseError) as err:
            parse_feature_model("model M\nfeature Root {\n  bogus Child {}\n}")
        assert err.value.line == 3

    def test_duplicate_name_rejected(self):
        src = "model M\nfeature Root {\n  mandatory A {}\n  optional A {}\n}"
        with pytest.raises(SemanticError, match="duplicate"):
            parse_feature_model(src)

    def test_unknown_constraint_feature_rejected(self):
        src = "model M\nfeature Root {}\nconstraint implies(Root, Ghost)"
        with pytest.raises(SemanticError, match="Ghost"):
            parse_feature_model(src)

    def test_group_needs_two_children(self):
        src = "model M\nfeature Root {\n  group xor {\n    Only {}\n  }\n}"
        with pytest.raises(SemanticError, match=">= 2"):
            parse_feature_model(src)

    def test_reserved_word_rejected_as_name(self):
        with pytest.raises(ParseError, match="reserved"):
            parse_feature_model("model M\nfeature constraint {}")

    def test_trailing_garbage_rejected(self):
        with pytest.raises(ParseError):
            parse_feature_model("model M\nfeature Root {}\nwhatever")

    def test_hazards_parsed(self):
        m = demo_model()
        assert len(m.hazard_traces) == 5
        precip = m.hazard_traces[0]
        assert precip.description == "Too much precipitation"
        assert "PrecipHeavy" in precip.contributing_features
        assert precip.template_node_ids == ("E1",)

    def test_round_trip_demo(self):
        m = demo_model()
        assert parse_feature_model(unparse(m)) == m

    def test_round_trip_random_models(self):
        rng = random.Random(2024)
        for _ in range(20):
            m = random_feature_model(rng, max_features=10)
            assert parse_feature_model(unparse(m)) == m


class TestSemantics:
    def test_mandatory_chain(self):
        m = parse_feature_model("model M\nfeature Root {\n  mandatory A {}\n}")
        models = truth_table_models(to_propositional(m), {"Root", "A"})
        assert models == [{"A": True, "Root": True}]

    def test_xor_two_models(self):
        m = parse_feature_model(
            "model M\nfeature Root {\n  group xor {\n    A {}\n    B {}\n  }\n}"
        )
        assert count_variants(m) == 2
        assert truth_table_count(to_propositional(m), {"Root", "A", "B"}) == 2

    def test_or_three_models(self):
        m = parse_feature_model(
            "model M\nfeature Root {\n  group or {\n    A {}\n    B {}\n  }\n}"
        )
        assert count_variants(m) == 3

    def test_xor_with_independent_optional(self):
        m = parse_feature_model(
            "model M\nfeature Root {\n  group xor {\n    A {}\n    B {}\n  }\n}\n"
        )
        # no optional: 2; add via separate model with optional C
        m2 = parse_feature_model(
            "model M\nfeature Root {\n  mandatory G {\n    group xor {\n      A {}\n      B {}\n    }\n  }\n  optional C {}\n}"
        )
        assert count_variants(m) == 2
        assert count_variants(m2) == 4

    def test_demo_count_is_pinned(self):
        assert count_variants(demo_model()) == DEMO_VARIANT_COUNT

    def test_random_models_match_oracle(self):
        rng = random.Random(4242)
        for _ in range(25):
            m = random_feature_model(rng, max_features=9)
            f = to_propositional(m)
            assert count_variants(m) == truth_table_count(f, m.concrete_names())


class TestSliceCount:
    def test_root_fixed_on_single_feature(self):
        m = parse_feature_model("model M\nfeature Root {}")
        assert slice_count(m, Configuration(selected=frozenset({"Root"}))) == 1

    def test_xor_partition(self):
        m = demo_model()
        total = count_variants(m)
        parts = [
            slice_count(m, Configuration(selected=frozenset({name})))
            for name in ("Recreational", "SearchAndRescue", "Delivery")
        ]
        assert sum(parts) == total

    def test_slice_never_exceeds_total(self):
        rng = random.Random(17)
        for _ in range(10):
            m = random_feature_model(rng, max_features=8)
            total = count_variants(m)
            for name in m.concrete_names():
                assert slice_count(m, Configuration(selected=frozenset({name}))) <= total

    def test_unknown_feature_raises(self):
        m = demo_model()
        with pytest.raises(InvalidSelectionError):
            slice_count(m, Configuration(selected=frozenset({"Ghost"})))

    def test_contradictory_fix_raises(self):
        with pytest.raises(ValueError):
            Configuration(selected=frozenset({"A"}), deselected=frozenset({"A"}))


class TestCheckConfiguration:
    def test_empty_partial_is_extensible(self):
        report = check_configuration(demo_model(), Configuration())
        assert report.verdict is Verdict.INCOMPLETE_BUT_EXTENSIBLE

    def test_sparse_and_congested_invalid(self):
        report = check_configuration(
            demo_model(),
            Configuration(selected=frozenset({"Sparse", "Congested"})),
        )
        assert report.verdict is Verdict.INVALID
        assert any("xor(Sparse, Congested)" in v for v in report.violations)

    def test_full_valid_configuration(self):
        m = demo_model()
        selected = frozenset({
            "SuasMission", "Pilot", "PilotCertification", "Part107",
            "ExperienceLevel", "ExpertHours", "Mission", "Purpose", "Recreational",
            "Sight", "Vlos", "Airspace", "AirspaceClass", "ClassG", "Density",
            "Sparse", "Vehicle", "WeightClass", "Small", "Weather",
            "Precipitation", "PrecipNone", "WindBand", "WindCalm",
            "TemperatureBand", "TempMild", "VisibilityBand", "VisUnlimited",
        })
        config = Configuration.full(selected, frozenset(m.concrete_names()))
        assert check_configuration(m, config).verdict is Verdict.VALID

    def test_every_enumerated_full_configuration_is_valid(self):
        rng = random.Random(88)
        m = random_feature_model(rng, max_features=8)
        f = to_propositional(m)
        names = m.concrete_names()
        for model in truth_table_models(f, names):
            selected = frozenset(n for n, v in model.items() if v)
            config = Configuration.full(selected, frozenset(names))
            assert check_configuration(m, config).verdict is Verdict.VALID

    def test_unknown_feature_is_invalid(self):
        report = check_configuration(demo_model(), Configuration(selected=frozenset({"Nope"})))
        assert report.verdict is Verdict.INVALID


class TestSubmodel:
    def test_subtree_counts_multiply(self):
        m = demo_model()
        product = 1
        for root in ("Pilot", "Mission", "Airspace", "Vehicle", "Weather"):
            product *= count_variants(submodel(m, root))
        assert product == count_variants(m)

    def test_submodel_root_is_mandatory(self):
        sub = submodel(demo_model(), "Density")
        assert sub.features["Density"].parent is None
        assert sub.features["Density"].optionality is Optionality.MANDATORY


class TestHazardCoverage:
    def test_all_demo_hazards_covered_by_wind_template(self):
        from safesple.fm import hazard_coverage
        from safesple.gsn import load_template_file, wind_template_path

        catalog = [load_template_file(wind_template_path())]
        report = hazard_coverage(demo_model(), catalog)
        assert report.uncovered == ()

    def test_trace_without_nodes_uncovered(self):
        from safesple.fm import hazard_coverage

        src = (
            "model M\nfeature Root {\n  optional A {}\n}\n"
            'hazard H1 "Something" {\n  contributes: A\n}'
        )
        m = parse_feature_model(src)
        report = hazard_coverage(m, [])
        assert len(report.uncovered) == 1
        assert "no template nodes" in report.uncovered[0].reasons[0]
