"""
LangGraph 파이프라인 구현

모든 실험을 오케스트레이션
"""

from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple, Type

from langgraph.graph import END, StateGraph

from fractrace.core.config import Config
from fractrace.core.context import ExperimentContext, ExperimentOutput, new_context
from fractrace.core.logger import get_logger
from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.capacitary.experiment import CapacitaryExperiment
from fractrace.experiments.capacity.experiment import CapacityExperiment
from fractrace.experiments.kernel.experiment import KernelExperiment
from fractrace.experiments.potentials.experiment import PotentialsExperiment
from fractrace.experiments.report import ReportTable, emit_report, write_json
from fractrace.experiments.scaling.experiment import ScalingExperiment
from fractrace.experiments.strichartz.experiment import StrichartzExperiment
from fractrace.experiments.trace.experiment import TraceExperiment

# 실행 순서. 커널 검증이 실패하면 이후 결과를 믿을 수 없으므로 중단
STAGES: List[Tuple[str, Type[BaseExperiment], bool]] = [
    ("kernel", KernelExperiment, True),
    ("potentials", PotentialsExperiment, False),
    ("capacity", CapacityExperiment, False),
    ("scaling", ScalingExperiment, False),
    ("trace", TraceExperiment, False),
    ("strichartz", StrichartzExperiment, False),
    ("capacitary", CapacitaryExperiment, False),
]


class FractracePipeline:
    """
    Fractrace 파이프라인

    LangGraph를 사용하여 모든 실험을 순차적으로 실행
    """

    def __init__(
        self,
        config: Config,
        output_dir: Path,
        seed: int = 0,
        stages: Optional[List[str]] = None,
    ) -> None:
        """
        Args:
            config: 설정
            output_dir: 결과 루트 (<out>)
            seed: 전역 시드
            stages: 실행할 단계 이름 (None 이면 전체)
        """
        self.config = config
        self.output_dir = Path(output_dir)
        self.seed = seed
        self.stages = [s for s in STAGES if stages is None or s[0] in stages]
        unknown = set(stages or []) - {name for name, _, _ in STAGES}
        if unknown:
            raise ValueError(f"알 수 없는 단계입니다: {', '.join(sorted(unknown))}")

        self.logger = get_logger(
            "pipeline",
            self.output_dir,
            log_to_console=bool(config.get("logging.console", True)),
        )
        config_path = str(config.config_path) if config.config_path else None
        self.context: ExperimentContext = new_context(seed, str(self.output_dir), config_path)

    def build_graph(self) -> Any:
        """
        LangGraph 그래프 구축

        Returns:
            컴파일된 그래프
        """
        workflow = StateGraph(dict)

        for name, experiment_cls, critical in self.stages:
            workflow.add_node(name, self._make_node(name, experiment_cls, critical))
        workflow.add_node("report", self._run_report)

        names = [name for name, _, _ in self.stages]
        workflow.set_entry_point(names[0])
        for current, following in zip(names, names[1:]):
            workflow.add_edge(current, following)

        workflow.add_conditional_edges(
            names[-1],
            self._should_create_report,
            {
                "create_report": "report",
                "end": END,
            },
        )
        workflow.add_edge("report", END)

        return workflow.compile()

    def _make_node(
        self,
        name: str,
        experiment_cls: Type[BaseExperiment],
        critical: bool,
    ) -> Callable[[Dict[str, Any]], Dict[str, Any]]:
        def node(state: Dict[str, Any]) -> Dict[str, Any]:
            self.logger.info("=" * 60)
            self.logger.info(f"{experiment_cls.__name__} 시작")
            self.logger.info("=" * 60)

            try:
                output = experiment_cls(self.context, self.config).run()
                state[f"{name}_output"] = output
                self.logger.info(f"{'✓' if output['passed'] else '✗'} {name} (passed={output['passed']})")
                return state

            except Exception as e:
                self.logger.error(f"{experiment_cls.__name__} 오류: {e}")
                if critical:
                    raise
                # 치명적 오류 아님, 계속 진행
                self.logger.warning(f"{name} 실패, 계속 진행")
                state[f"{name}_output"] = {
                    "experiment": name,
                    "status": "failed",
                    "passed": False,
                    "error": {"type": type(e).__name__, "message": str(e)},
                    "data": {},
                }
                return state

        node.__name__ = f"_run_{name}"
        return node

    def _run_report(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """단계별 상태 표와 요약 기록"""
        self.logger.info("=" * 60)
        self.logger.info("Report 시작")
        self.logger.info("=" * 60)

        try:
            table = ReportTable("suite", ("stage", "status", "passed", "failed_checks"))
            for name, _, _ in self.stages:
                output = state.get(f"{name}_output", {})
                failed = [
                    check["name"] for check in output.get("data", {}).get("checks", []) if not check["passed"]
                ]
                table.add(name, output.get("status", "skipped"), output.get("passed", False), "; ".join(failed))
            emit_report([table], self.output_dir, self.summarize(state))
            state["report_output"] = {"status": "success"}
            return state

        except Exception as e:
            self.logger.error(f"Report 오류: {e}")
            # Report 실패는 치명적 오류 아님
            self.logger.warning("Report 실패, 계속 진행")
            state["report_output"] = {"status": "failed"}
            return state

    def _should_create_report(self, state: Dict[str, Any]) -> str:
        """
        보고서 생성 여부 결정

        Returns:
            "create_report" 또는 "end"
        """
        if self.config.get("suite.report", True):
            return "create_report"
        return "end"

    def summarize(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """최종 상태에서 결정적 요약 (시각 정보 없음)"""
        experiments: Dict[str, Any] = {}
        for name, _, _ in self.stages:
            output: Optional[ExperimentOutput] = state.get(f"{name}_output")
            if output is None:
                experiments[name] = {"status": "skipped", "passed": False}
                continue
            experiments[name] = {
                "status": output["status"],
                "passed": output["passed"],
                "error": output.get("error"),
                "checks": output.get("data", {}).get("checks", []),
            }
        return {
            "run_id": self.context["run_id"],
            "seed": self.seed,
            "experiments": experiments,
            "errors": sorted(n for n, e in experiments.items() if e["status"] == "failed"),
            "passed": all(e["passed"] for e in experiments.values()),
        }

    def run(self) -> Dict[str, Any]:
        """
        파이프라인 실행

        Returns:
            요약 (summary.json 과 같은 내용)
        """
        self.logger.info("Fractrace 파이프라인 시작")
        self.logger.info(f"Run ID: {self.context['run_id']}")

        graph = self.build_graph()

        try:
            final_state = graph.invoke({})

            summary = self.summarize(final_state)
            if final_state.get("report_output", {}).get("status") != "success":
                write_json(summary, self.output_dir / "summary.json")

            self.logger.info("=" * 60)
            self.logger.info(f"✓ 파이프라인 완료 (passed={summary['passed']})")
            self.logger.info("=" * 60)
            return summary

        except Exception as e:
            self.logger.error(f"파이프라인 실패: {e}")
            raise

        finally:
            self.logger.close()
