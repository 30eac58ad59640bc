"""
KernelExperiment 구현

커널 검증 스위트 실행
"""

from typing import Any, Dict, List

from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.kernel.suites import (
    closed_form_suite,
    envelope_suite,
    mass_suite,
    run_kernel_suite,
    scaling_suite,
    stable_suite,
)
from fractrace.experiments.report import ReportTable


class KernelExperiment(BaseExperiment):
    """
    Kernel Experiment

    역할:
    1. 닫힌 형태 대 수치 역변환 비교
    2. 질량 보존과 자기유사성
    3. 포락선 스캔 (α = 1 은 flagged)
    4. 안정 샘플러 몬테카를로 교차 확인
    """

    def execute(self) -> Dict[str, Any]:
        """
        Returns:
            {
                "tables": {표 이름: CSV 경로},
                "pass_rate": {스위트: 통과 비율},
            }
        """
        tables = self._run_suites()
        paths = self.write_tables(tables)

        pass_rate = {}
        for table in tables:
            flags = [row[-1] for row in table.rows]
            rate = sum(bool(f) for f in flags) / len(flags) if flags else 1.0
            pass_rate[table.name] = rate
            self.check(f"{table.name} 전부 통과", rate == 1.0, f"({rate:.3f})")

        return {"tables": paths, "pass_rate": pass_rate}

    def _run_suites(self) -> List[ReportTable]:
        """overrides 가 있으면 그 스위트 하나, 없으면 설정의 전체 스위트"""
        if self.overrides is not None:
            suite = self.overrides.params.get("suite", "closed-form")
            self.logger.info(f"커널 스위트 {suite} (α={self.overrides.alpha}, n={self.overrides.dim})")
            return [
                run_kernel_suite(suite, self.overrides.alpha, self.overrides.dim, seed=self.seed)
            ]

        dims = tuple(self.config.get("kernel.mass_dims", [1, 2]))
        alphas = tuple(self.config.get("kernel.mass_alphas", [0.25, 0.5, 0.75, 1.0]))
        times = tuple(self.config.get("kernel.mass_times", [0.1, 1.0, 10.0]))
        pairs = int(self.config.get("kernel.closed_form_pairs", 200))
        samples = int(self.config.get("kernel.stable_samples", 1000000))

        self.logger.info(f"커널 스위트: α={alphas}, n={dims}, t={times}")
        return [
            closed_form_suite(pairs, dims, self.seed),
            mass_suite(alphas, dims, times),
            scaling_suite(alphas, dims, times),
            envelope_suite(alphas, dims),
            stable_suite(samples, self.seed),
        ]
