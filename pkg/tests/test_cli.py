"""Command-line surface: subcommands and exit codes."""

import json

import pytest
from click.testing import CliRunner

from safesple.cli import main
from safesple.paths import demo_model_path, sample_requests_dir, template_dir


@pytest.fixture()
def runner():
    return CliRunner()


def request_path(name: str) -> str:
    return str(sample_requests_dir() / f"{name}.json")


class TestParse:
    def test_parse_demo(self, runner):
        result = runner.invoke(main, ["parse", str(demo_model_path())])
        assert result.exit_code == 0
        assert "51 features" in result.output

    def test_missing_file_is_input_error(self, runner):
        result = runner.invoke(main, ["parse", "nowhere.fm"])
        assert result.exit_code == 3

    def test_syntax_error_is_input_error(self, runner, tmp_path):
        bad = tmp_path / "bad.fm"
        bad.write_text("model M\nfeature Root {\n  banana\n}")
        result = runner.invoke(main, ["parse", str(bad)])
        assert result.exit_code == 3


class TestCount:
    def test_total(self, runner):
        result = runner.invoke(main, ["count", str(demo_model_path())])
        assert result.exit_code == 0
        assert result.output.strip() == "746496"

    def test_slice(self, runner):
        result = runner.invoke(
            main, ["count", str(demo_model_path()), "--fix", "Recreational=true"])
        assert result.output.strip() == "248832"

    def test_unknown_fix_is_input_error(self, runner):
        result = runner.invoke(
            main, ["count", str(demo_model_path()), "--fix", "Ghost=true"])
        assert result.exit_code == 3


class TestCheckConfig:
    def test_valid_partial(self, runner, tmp_path):
        config = tmp_path / "c.json"
        config.write_text(json.dumps({"selected": ["Sparse"], "partial": True}))
        result = runner.invoke(
            main, ["check-config", str(demo_model_path()), str(config)])
        assert result.exit_code == 2
        assert "incomplete-but-extensible" in result.output

    def test_invalid(self, runner, tmp_path):
        config = tmp_path / "c.json"
        config.write_text(json.dumps({"selected": ["Sparse", "Congested"]}))
        result = runner.invoke(
            main, ["check-config", str(demo_model_path()), str(config)])
        assert result.exit_code == 1
        assert "xor(Sparse, Congested)" in result.output


class TestValidateTemplates:
    def test_shipped_catalog(self, runner):
        result = runner.invoke(main, ["validate-templates", str(template_dir())])
        assert result.exit_code == 0
        assert "0 finding(s)" in result.output


class TestInstantiate:
    def test_instance1_exit_admit(self, runner):
        result = runner.invoke(main, ["instantiate", "--request", request_path("instance1")])
        assert result.exit_code == 0
        docs = json.loads(result.output)
        wind = next(d for d in docs if d["templateId"] == "wind-entry")
        assert wind["topGoalStatus"] == "satisfied"

    def test_instance2_exit_deny(self, runner):
        result = runner.invoke(main, ["instantiate", "--request", request_path("instance2")])
        assert result.exit_code == 1

    def test_what_if_flips(self, runner):
        result = runner.invoke(main, [
            "instantiate", "--request", request_path("instance2"), "--what-if", "gusts=3"])
        assert result.exit_code == 0

    def test_graph_format(self, runner):
        result = runner.invoke(main, [
            "instantiate", "--request", request_path("instance2"), "--format", "graph"])
        assert "status=violated" in result.output


class TestDecide:
    def test_instance1_admit_exit0(self, runner):
        result = runner.invoke(main, ["decide", "--request", request_path("instance1")])
        assert result.exit_code == 0
        assert json.loads(result.output)["verdict"] == "admit"

    def test_instance2_deny_exit1(self, runner):
        result = runner.invoke(main, ["decide", "--request", request_path("instance2")])
        assert result.exit_code == 1
        doc = json.loads(result.output)
        assert doc["verdict"] == "deny"
        assert doc["advisory"]["entries"][0]["nodeId"] == "E4"

    def test_unresolved_exit2(self, runner, tmp_path):
        payload = json.loads((sample_requests_dir() / "instance1.json").read_text())
        payload["mission"]["requestedStart"] = "2026-07-01T10:00:00Z"
        file = tmp_path / "future.json"
        file.write_text(json.dumps(payload))
        result = runner.invoke(main, ["decide", "--request", str(file)])
        assert result.exit_code == 2

    def test_bad_request_exit3(self, runner, tmp_path):
        file = tmp_path / "bad.json"
        file.write_text("{}")
        result = runner.invoke(main, ["decide", "--request", str(file)])
        assert result.exit_code == 3
