"""
실험 기본 클래스와 파이프라인
"""

import json
from pathlib import Path
from typing import Any, Dict

import pytest

from fractrace.core.config import Config
from fractrace.core.context import ExperimentContext
from fractrace.core.errors import RegimeError
from fractrace.experiments.base import BaseExperiment, ExperimentConfig
from fractrace.experiments.kernel.experiment import KernelExperiment
from fractrace.pipeline import FractracePipeline


class PassingExperiment(BaseExperiment):
    def execute(self) -> Dict[str, Any]:
        self.check("항상 참", True)
        return {"value": 1.0}


class FailingCheckExperiment(BaseExperiment):
    def execute(self) -> Dict[str, Any]:
        self.check("항상 거짓", False, "(0 > 1)")
        return {}


class BrokenExperiment(BaseExperiment):
    def execute(self) -> Dict[str, Any]:
        raise RegimeError("p ≥ 1 + n/(2α)")


@pytest.fixture
def quiet_config() -> Config:
    config = Config()
    config.set("logging.console", False)
    return config


class TestBaseExperiment:
    def test_output_and_cache(self, context: ExperimentContext, config: Config, out_dir: Path) -> None:
        output = PassingExperiment(context, config).run()
        assert output["status"] == "success"
        assert output["passed"]
        assert output["run_id"] == "seed-0"
        assert output["data"]["checks"] == [{"name": "항상 참", "passed": True, "detail": ""}]
        cached = json.loads((out_dir / "cache" / "passing_experiment.json").read_text(encoding="utf-8"))
        assert cached["data"]["value"] == 1.0

    def test_failed_check_is_not_an_error(self, context: ExperimentContext, config: Config) -> None:
        output = FailingCheckExperiment(context, config).run()
        assert output["status"] == "success"
        assert not output["passed"]

    def test_error_file(self, context: ExperimentContext, config: Config, out_dir: Path) -> None:
        with pytest.raises(RegimeError):
            BrokenExperiment(context, config).run()
        error_file = out_dir / "logs" / "broken_experiment" / "error_broken_experiment.json"
        assert json.loads(error_file.read_text(encoding="utf-8"))["error"]["type"] == "RegimeError"
        assert context["experiment_status"]["broken_experiment"] == "failed"

    def test_table_dir(self, context: ExperimentContext, config: Config, out_dir: Path) -> None:
        assert PassingExperiment(context, config).table_dir() == out_dir / "passing"

    def test_validate(self) -> None:
        with pytest.raises(RegimeError):
            ExperimentConfig(variant="S", alpha=0.5, p=2.0).validate()
        with pytest.raises(RegimeError):
            ExperimentConfig(p=2.0, q=2.0).validate(wolff_path=True)
        with pytest.raises(ValueError):
            ExperimentConfig(variant="T").validate()


class TestPipeline:
    def test_non_critical_failure_is_recorded(self, quiet_config: Config, out_dir: Path) -> None:
        pipeline = FractracePipeline(quiet_config, out_dir, seed=3)
        pipeline.stages = [
            ("passing", PassingExperiment, False),
            ("broken", BrokenExperiment, False),
        ]
        summary = pipeline.run()
        assert summary["run_id"] == "seed-3"
        assert summary["errors"] == ["broken"]
        assert not summary["passed"]
        assert summary["experiments"]["passing"]["passed"]
        assert summary["experiments"]["broken"]["error"]["type"] == "RegimeError"

        written = json.loads((out_dir / "summary.json").read_text(encoding="utf-8"))
        assert written == json.loads(json.dumps(summary))
        lines = (out_dir / "suite.csv").read_text(encoding="utf-8").splitlines()
        assert lines[0] == "stage,status,passed,failed_checks"
        assert lines[2].startswith("broken,failed,false")

    def test_critical_failure_stops(self, quiet_config: Config, out_dir: Path) -> None:
        pipeline = FractracePipeline(quiet_config, out_dir)
        pipeline.stages = [
            ("broken", BrokenExperiment, True),
            ("passing", PassingExperiment, False),
        ]
        with pytest.raises(RegimeError):
            pipeline.run()
        assert not (out_dir / "cache" / "passing_experiment.json").exists()

    def test_report_disabled(self, quiet_config: Config, out_dir: Path) -> None:
        quiet_config.set("suite.report", False)
        pipeline = FractracePipeline(quiet_config, out_dir)
        pipeline.stages = [("passing", PassingExperiment, False)]
        summary = pipeline.run()
        assert summary["passed"]
        assert (out_dir / "summary.json").exists()
        assert not (out_dir / "suite.csv").exists()

    def test_unknown_stage(self, quiet_config: Config, out_dir: Path) -> None:
        with pytest.raises(ValueError, match="nope"):
            FractracePipeline(quiet_config, out_dir, stages=["kernel", "nope"])

    def test_stage_selection(self, quiet_config: Config, out_dir: Path) -> None:
        pipeline = FractracePipeline(quiet_config, out_dir, stages=["trace", "kernel"])
        assert [name for name, _, _ in pipeline.stages] == ["kernel", "trace"]


@pytest.mark.slow
def test_kernel_suite_override(context: ExperimentContext, config: Config, out_dir: Path) -> None:
    overrides = ExperimentConfig(alpha=0.5, dim=1, params={"suite": "mass"})
    output = KernelExperiment(context, config, overrides).run()
    assert output["passed"]
    assert (out_dir / "kernel" / "kernel_mass.csv").exists()
