"""
ScalingExperiment 구현

공 용량 C(B_r) ∝ r^β 의 로그-로그 기울기 적합
"""

from typing import Any, Dict, List, Tuple

from fractrace.capacity.solver import GridSettings, SolverControls
from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.report import ReportTable
from fractrace.experiments.scaling.sweep import run_scaling

SLOPE_TOL = {"R": 0.2, "S": 0.3}


class ScalingExperiment(BaseExperiment):
    """
    Scaling Experiment

    역할:
    1. R: α ∈ {0.25, 0.5, 0.75}, p = 2 에서 기울기 n
    2. S: p ∈ {1.25, 1.5} 에서 기울기 n + 2α(1−p)
    """

    def execute(self) -> Dict[str, Any]:
        settings = GridSettings.from_config(self.config)
        controls = SolverControls.from_config(self.config)
        radii = [float(r) for r in self.config.get("scaling.radii", [0.125, 0.25, 0.5, 1.0, 2.0, 4.0])]
        time_samples = int(self.config.get("capacity.time_samples", 16))
        space_samples = int(self.config.get("capacity.space_samples", 32))

        points = ReportTable(
            "capacities", ("variant", "alpha", "p", "r", "primal", "dual", "midpoint", "gap")
        )
        fits = ReportTable(
            "fits", ("variant", "alpha", "p", "mode", "slope", "half_width", "expected", "pass")
        )
        slopes = {}
        for variant, alpha, p in self._cases():
            if self.overrides is not None and "radii" in self.overrides.params:
                radii = [float(r) for r in self.overrides.params["radii"]]
            result = run_scaling(variant, alpha, p, radii, settings, controls, time_samples, space_samples)
            assert result.fit is not None
            for row in result.rows:
                points.add(variant, alpha, p, row.r, row.primal, row.dual, row.midpoint, row.gap)
            ok = self.check(
                f"{variant} α={alpha} p={p} 기울기",
                result.slope_error <= SLOPE_TOL[variant],
                f"({result.fit.slope:.4f} vs {result.expected_slope:.4f})",
            )
            fits.add(variant, alpha, p, result.mode, result.fit.slope, result.fit.half_width,
                     result.expected_slope, ok)
            slopes[f"{variant}:{alpha}:{p}"] = result.fit.slope

        return {"tables": self.write_tables([points, fits]), "slopes": slopes}

    def _cases(self) -> List[Tuple[str, float, float]]:
        if self.overrides is not None:
            return [(self.overrides.variant, self.overrides.alpha, self.overrides.p)]
        r_p = float(self.config.get("scaling.r_p", 2.0))
        s_alpha = float(self.config.get("scaling.s_alpha", 0.5))
        cases = [("R", float(a), r_p) for a in self.config.get("scaling.r_alphas", [0.25, 0.5, 0.75])]
        cases += [("S", s_alpha, float(p)) for p in self.config.get("scaling.s_exponents", [1.25, 1.5])]
        return cases
