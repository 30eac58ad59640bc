"""
StrichartzExperiment 구현
"""

import math
from typing import Any, Dict

from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.report import ReportTable
from fractrace.experiments.strichartz.sweep import strichartz_sweep
from fractrace.semigroup.exponents import strichartz_exponent

RESCALE_DRIFT = 0.10
REFINE_DRIFT = 0.15

GRID_KEYS = ("half_width", "spacing", "horizon", "time_steps")


class StrichartzExperiment(BaseExperiment):
    """
    Strichartz Experiment

    역할:
    1. 닫힌 형태 q̃ (α=1/2, p=3/2, n=1 → 6)
    2. 무작위 매끈한 시행의 ‖S_α g‖_q̃ / ‖g‖_p 최대값
    3. 포물 재척도와 격자 세분에서 최대값의 안정성
    """

    def execute(self) -> Dict[str, Any]:
        if self.overrides is not None:
            alpha, p, dim = self.overrides.alpha, self.overrides.p, self.overrides.dim
            trials = self.overrides.trials
        else:
            alpha = float(self.config.get("strichartz.alpha", 0.5))
            p = float(self.config.get("strichartz.p", 1.5))
            dim = int(self.config.get("strichartz.dim", 1))
            trials = int(self.config.get("strichartz.trials", 12))

        reference = strichartz_exponent(1, 0.5, 1.5)
        self.check("q̃(α=1/2, p=3/2, n=1) = 6", math.isclose(reference, 6.0, rel_tol=1e-12))

        grid_params = {key: self.config.get(f"strichartz.{key}") for key in GRID_KEYS}
        result = strichartz_sweep(
            alpha, p, trials, self.seed, dim,
            rescale=float(self.config.get("strichartz.rescale", 2.0)),
            **{k: v for k, v in grid_params.items() if v is not None},
        )
        self.logger.info(
            f"α={alpha} p={p} q̃={result.q_tilde:.6g}: max={result.max_ratio:.6g}, "
            f"rescaled={result.max_rescaled:.6g}, refined={result.max_refined:.6g}"
        )

        table = ReportTable("strichartz", ("trial", "ratio", "rescaled_ratio", "refined_ratio"))
        for row in result.rows:
            table.add(row.trial, row.ratio, row.rescaled_ratio, row.refined_ratio)

        self.check("최대 비율 유한", math.isfinite(result.max_ratio))
        self.check(f"재척도 변동 ≤ {RESCALE_DRIFT:.0%}", result.rescale_drift <= RESCALE_DRIFT,
                   f"({result.rescale_drift:.4f})")
        self.check(f"세분 변동 ≤ {REFINE_DRIFT:.0%}", result.refine_drift <= REFINE_DRIFT,
                   f"({result.refine_drift:.4f})")

        return {
            "tables": self.write_tables([table]),
            "q_tilde": result.q_tilde,
            "max_ratio": result.max_ratio,
            "rescale_drift": result.rescale_drift,
            "refine_drift": result.refine_drift,
        }
