"""
BaseExperiment 추상 클래스

모든 실험이 상속받는 기본 클래스
"""

import json
import re
import traceback
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from fractrace.core.config import Config
from fractrace.core.context import ErrorInfo, ExperimentContext, ExperimentOutput
from fractrace.core.logger import get_logger
from fractrace.experiments.report import ReportTable, emit_report, to_jsonable
from fractrace.semigroup.exponents import ExponentConfig, require_s_regime


@dataclass(frozen=True)
class ExperimentConfig:
    """
    실험 구성

    Attributes:
        variant: "R" | "S"
        alpha: 분수 지수
        p, q: 지수 (q 생략 시 p)
        dim: 공간 차원
        measure: 측도 출처 ("file:<경로>" 또는 내장 family 이름)
        trials: 시행 수
        seed: 난수 시드
        params: 실험별 추가 값
    """

    variant: str = "R"
    alpha: float = 0.5
    p: float = 2.0
    q: Optional[float] = None
    dim: int = 1
    measure: str = "dirac"
    trials: int = 24
    seed: int = 0
    params: Dict[str, Any] = field(default_factory=dict)

    @property
    def exponents(self) -> ExponentConfig:
        return ExponentConfig(self.p, self.q)

    def validate(self, wolff_path: bool = False) -> None:
        """
        영역 검사. S 경로는 p < 1 + n/(2α), Wolff 경로는 p ≠ q.

        Raises:
            RegimeError: 영역 위반
        """
        if self.variant not in ("R", "S"):
            raise ValueError(f"알 수 없는 변형입니다: {self.variant}")
        exponents = self.exponents
        if self.variant == "S":
            require_s_regime(self.p, self.dim, self.alpha)
        if wolff_path:
            exponents.require_distinct()


class BaseExperiment(ABC):
    """
    실험 기본 클래스

    모든 실험은 이 클래스를 상속받아 execute() 메서드를 구현합니다.
    공통 기능:
    - 표준 출력 구조 생성
    - 단언 기록 (check)
    - 에러 처리 및 로깅
    """

    def __init__(
        self,
        context: ExperimentContext,
        config: Optional[Config] = None,
        overrides: Optional[ExperimentConfig] = None,
    ) -> None:
        """
        Args:
            context: 실행 컨텍스트
            config: 설정 (None 이면 context 의 config_path 로 로드)
            overrides: CLI 에서 온 실험 구성 (None 이면 설정 파일 값)
        """
        self.context = context
        self.experiment_name = _snake(self.__class__.__name__)
        self.output_dir = Path(context["output_dir"])
        self.logger = get_logger(
            self.experiment_name,
            self.output_dir,
            log_to_console=False,
        )
        if config is None:
            config_path = context.get("config_path")
            config = Config(Path(config_path) if config_path else None)
        self.config = config
        self.overrides = overrides
        self.seed = int(context["seed"])
        self.checks: List[Tuple[str, bool, str]] = []

        self.logger.info(f"{self.experiment_name} 시작 (seed={self.seed})")

    @abstractmethod
    def execute(self) -> Dict[str, Any]:
        """
        실험 실행 로직

        Returns:
            실험별 고유 데이터 (ExperimentOutput 의 data 필드)
        """

    def check(self, name: str, condition: bool, detail: str = "") -> bool:
        """단언 결과를 기록하고 그대로 반환"""
        self.checks.append((name, bool(condition), detail))
        self.logger.log_check(name, bool(condition), detail)
        return bool(condition)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def run(self) -> ExperimentOutput:
        """
        실험 실행 및 결과 반환

        execute() 를 호출하고 표준 출력 구조로 감싸 <out>/cache/<name>.json 에 저장합니다.
        실패하면 에러 JSON 을 남기고 예외를 전파합니다.
        """
        try:
            self.context["current_experiment"] = self.experiment_name
            self.context["experiment_status"][self.experiment_name] = "running"

            data = self.execute()
            data["checks"] = [
                {"name": name, "passed": ok, "detail": detail} for name, ok, detail in self.checks
            ]

            self.context["experiment_status"][self.experiment_name] = "success"
            output = self._create_output(status="success", data=data)
            self._save_output(output)
            self.logger.info(f"{self.experiment_name} 완료 (passed={self.passed})")
            return output

        except Exception as e:
            self.context["experiment_status"][self.experiment_name] = "failed"
            error_info: ErrorInfo = {
                "type": type(e).__name__,
                "message": f"{type(e).__name__}: {e}",
                "log_path": str(self.logger.get_log_path()),
            }
            self.logger.exception(f"{self.experiment_name} 실패: {e}")

            output = self._create_output(status="failed", data={}, error=error_info)
            self._save_output(output)
            self._handle_failure(error_info, traceback.format_exc())
            raise

        finally:
            self.logger.close()

    def _create_output(
        self,
        status: str,
        data: Dict[str, Any],
        error: Optional[ErrorInfo] = None,
    ) -> ExperimentOutput:
        return {
            "run_id": self.context["run_id"],
            "experiment": self.experiment_name,
            "status": status,
            "passed": status == "success" and self.passed,
            "error": error,
            "data": data,
        }

    def _save_output(self, output: ExperimentOutput) -> None:
        """<out>/cache/{experiment_name}.json 에 저장"""
        cache_dir = self.output_dir / "cache"
        cache_dir.mkdir(parents=True, exist_ok=True)
        output_file = cache_dir / f"{self.experiment_name}.json"
        with open(output_file, "w", encoding="utf-8") as f:
            json.dump(to_jsonable(output), f, indent=2, ensure_ascii=False, sort_keys=True)
        self.logger.debug(f"출력 저장: {output_file}")

    def _handle_failure(self, error_info: ErrorInfo, stack_trace: str) -> None:
        """에러 JSON 을 <out>/logs/<name>/error_<name>.json 에 남기고 알립니다."""
        error_file = self.output_dir / "logs" / self.experiment_name / f"error_{self.experiment_name}.json"
        error_file.parent.mkdir(parents=True, exist_ok=True)
        with open(error_file, "w", encoding="utf-8") as f:
            json.dump(
                {"experiment": self.experiment_name, "error": error_info, "stack_trace": stack_trace},
                f,
                indent=2,
                ensure_ascii=False,
            )
        print(f"❌ {self.experiment_name} 실패: {error_info['message']}")
        print(f"   로그: {error_info['log_path']}")

    def table_dir(self) -> Path:
        """CSV 출력 디렉토리"""
        return self.output_dir / self.experiment_name.replace("_experiment", "")

    def write_tables(self, tables: Sequence[ReportTable]) -> Dict[str, str]:
        """표를 table_dir 에 CSV 로 기록하고 {표 이름: 경로} 를 반환"""
        paths = emit_report(tables, self.table_dir())
        return {table.name: str(path) for table, path in zip(tables, paths)}


def _snake(name: str) -> str:
    """KernelExperiment → kernel_experiment"""
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def dyadic_scales(config: Config) -> range:
    """geometry.scale_min..scale_max (양끝 포함)"""
    return range(int(config.get("geometry.scale_min", -20)), int(config.get("geometry.scale_max", 20)) + 1)
