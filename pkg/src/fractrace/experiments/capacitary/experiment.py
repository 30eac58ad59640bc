"""
CapacitaryExperiment 구현
"""

import math
from typing import Any, Dict

from fractrace.capacity.solver import SolverControls
from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.capacitary.sweep import capacitary_suite
from fractrace.experiments.report import ReportTable


class CapacitaryExperiment(BaseExperiment):
    """
    Capacitary Experiment

    역할:
    1. 초과집합 Cap(E_λ) 의 약형 부등식 λ^p·Cap ≤ ‖g‖_p^p (시드·수준별)
    2. 이진 수준 합으로 강형 상수 추정
    """

    def execute(self) -> Dict[str, Any]:
        controls = SolverControls.from_config(self.config)
        if self.overrides is not None:
            alpha, p = self.overrides.alpha, self.overrides.p
            seeds = self.overrides.trials
        else:
            alpha = float(self.config.get("capacitary.alpha", 0.5))
            p = float(self.config.get("capacitary.p", 1.5))
            seeds = int(self.config.get("capacitary.seeds", 20))

        result = capacitary_suite(
            alpha, p, seeds,
            levels=int(self.config.get("capacitary.levels", 6)),
            base_seed=self.seed,
            coarsening=int(self.config.get("capacitary.coarsening", 2)),
            controls=controls,
        )

        levels = ReportTable("levels", ("seed", "level", "lambda", "primal", "dual", "weak_ratio", "weak_ok"))
        for row in result.rows:
            levels.add(row.seed, row.level, row.lam, row.primal, row.dual, row.weak_ratio, row.weak_ok)
        strong = ReportTable("strong", ("seed", "constant"))
        for seed, constant in sorted(result.strong_constants.items()):
            strong.add(seed, constant)

        self.check("약형 부등식 (모든 시드·수준)", result.weak_holds, f"(max={result.max_weak_ratio:.6f})")
        self.check("강형 상수 유한", math.isfinite(result.max_strong), f"({result.max_strong:.6g})")

        return {
            "tables": self.write_tables([levels, strong]),
            "max_weak_ratio": result.max_weak_ratio,
            "max_strong": result.max_strong,
        }
