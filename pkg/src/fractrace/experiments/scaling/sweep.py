"""
공 용량의 척도 법칙 C(B_r) ∝ r^β

β = n (R), n + 2α(1−p) (S). scaled 모드는 격자가 공과 함께 척도 변환되므로
적합 기울기가 이산화 수준에서 정확히 β 이고, fixed 모드는 가장 큰 공에 맞춘 한 격자를
모든 반경에 씁니다.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Literal, Sequence

from fractrace.capacity.sets import ball_samples
from fractrace.capacity.solver import GridSettings, SolverControls, ball_capacity
from fractrace.experiments.fitting import SlopeFit, fit_loglog
from fractrace.geometry.ball import ParabolicBall
from fractrace.potentials.wolff import denominator_exponent

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingRow:
    r: float
    primal: float
    dual: float
    midpoint: float
    gap: float
    converged: bool


@dataclass
class ScalingResult:
    variant: str
    alpha: float
    p: float
    expected_slope: float
    mode: str
    rows: List[ScalingRow] = field(default_factory=list)
    fit: SlopeFit | None = None

    @property
    def slope_error(self) -> float:
        assert self.fit is not None
        return abs(self.fit.slope - self.expected_slope)


def run_scaling(
    variant: Literal["R", "S"],
    alpha: float,
    p: float,
    radii: Sequence[float] = (0.125, 0.25, 0.5, 1.0, 2.0, 4.0),
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
    time_samples: int = 16,
    space_samples: int = 32,
) -> ScalingResult:
    """
    반경마다 B_r(0, 0) 의 용량 괄호를 풀고 중점의 로그-로그 기울기를 적합합니다 (n = 1).

    Raises:
        RegimeError: S 변형에서 p ≥ 1 + 1/(2α)
    """
    expected = denominator_exponent(variant, 1, alpha, p)
    fixed_grid = None
    if settings.mode == "fixed":
        largest = ParabolicBall(0.0, (0.0,), max(radii), alpha)
        fixed_grid = settings.grid_for(ball_samples(largest, time_samples, space_samples), variant, alpha)

    result = ScalingResult(variant=variant, alpha=alpha, p=p, expected_slope=expected, mode=settings.mode)
    for r in sorted(float(v) for v in radii):
        estimate = ball_capacity(
            variant, r, p, alpha, settings, controls, time_samples, space_samples, fixed_grid=fixed_grid
        )
        result.rows.append(
            ScalingRow(
                r=r,
                primal=estimate.primal_value,
                dual=estimate.dual_value,
                midpoint=estimate.midpoint,
                gap=estimate.gap,
                converged=estimate.converged,
            )
        )
        logger.debug("scaling %s r=%g: [%.6e, %.6e]", variant, r, estimate.dual_value, estimate.primal_value)

    result.fit = fit_loglog([row.r for row in result.rows], [row.midpoint for row in result.rows])
    return result
