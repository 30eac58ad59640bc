"""
용량 부등식 스윕

시드마다 비음 g 를 만들고 2진 수준 λ = 2^i 에서 C(E_λ(g)) 를 풀어
- 약형: λ^p C(E_λ) ≤ ‖g‖_p^p (상수 1, 허용 1 + 2·feas_tol)
- 강형 합: Σ_i 2^{ip} C(E_{2^i}) / ‖g‖_p^p
를 기록합니다.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from fractrace.capacity.solver import SolverControls
from fractrace.capacity.superlevel import superlevel_capacity, superlevel_problem
from fractrace.experiments.strichartz.sweep import StrichartzTrial
from fractrace.semigroup.exponents import require_s_regime
from fractrace.semigroup.fields import SpaceTimeField, SpatialGrid, TimeAxis

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelRow:
    seed: int
    level: int
    lam: float
    primal: float
    dual: float
    weak_ratio: float
    weak_ok: bool


@dataclass
class CapacitaryResult:
    """
    Attributes:
        rows: (시드, 수준) 별 결과
        strong_constants: 시드별 강형 합 / ‖g‖_p^p
    """

    alpha: float
    p: float
    feas_tol: float
    rows: List[LevelRow] = field(default_factory=list)
    strong_constants: Dict[int, float] = field(default_factory=dict)

    @property
    def weak_holds(self) -> bool:
        return all(r.weak_ok for r in self.rows)

    @property
    def max_weak_ratio(self) -> float:
        return max((r.weak_ratio for r in self.rows), default=0.0)

    @property
    def max_strong(self) -> float:
        return max(self.strong_constants.values(), default=0.0)


def source_field(seed: int, grid: SpatialGrid, time: TimeAxis) -> SpaceTimeField:
    """시드 고정 비음 g: 콤팩트 C^∞ 덩어리 두 개의 합"""
    rng = np.random.default_rng(seed)
    values = np.zeros((time.steps + 1,) + grid.shape)
    for _ in range(2):
        trial = StrichartzTrial(
            t_center=float(rng.uniform(0.25, 0.5) * time.horizon),
            t_width=float(rng.uniform(0.15, 0.4) * time.horizon),
            x_center=(float(rng.uniform(-0.125, 0.125) * grid.half_width),),
            x_width=float(rng.uniform(0.125, 0.375) * grid.half_width),
            amplitude=float(rng.uniform(0.5, 2.0)),
        )
        values += SpaceTimeField.from_function(grid, time, trial.function()).values
    return SpaceTimeField(grid, time, values)


def capacitary_suite(
    alpha: float,
    p: float,
    seeds: int = 20,
    levels: int = 6,
    base_seed: int = 0,
    half_width: float = 4.0,
    spacing: float = 0.25,
    horizon: float = 2.0,
    time_steps: int = 16,
    coarsening: int = 2,
    controls: SolverControls = SolverControls(),
) -> CapacitaryResult:
    """
    Raises:
        RegimeError: p ≥ 1 + 1/(2α)
    """
    require_s_regime(p, 1, alpha)
    grid = SpatialGrid(half_width, spacing, 1)
    time = TimeAxis(horizon, time_steps)
    result = CapacitaryResult(alpha=alpha, p=p, feas_tol=controls.feas_tol)
    bound = 1.0 + 2.0 * controls.feas_tol

    for k in range(seeds):
        seed = base_seed + k
        g = source_field(seed, grid, time)
        prepared = superlevel_problem(g, alpha, coarsening)
        norm_p = prepared.g_norm(p) ** p
        peak = float(np.max(prepared.potential))
        if peak <= 0 or norm_p == 0:
            result.strong_constants[seed] = 0.0
            continue
        top = math.floor(math.log2(peak))
        strong = 0.0
        # 맨 위 수준은 max S_α g 를 넘으므로 기여가 0
        for i in range(top + 1, top - levels, -1):
            lam = 2.0**i
            estimate = superlevel_capacity(g, lam, p, alpha, coarsening, controls, prepared)
            weak_ratio = lam**p * estimate.primal_value / norm_p
            result.rows.append(
                LevelRow(
                    seed=seed,
                    level=i,
                    lam=lam,
                    primal=estimate.primal_value,
                    dual=estimate.dual_value,
                    weak_ratio=weak_ratio,
                    weak_ok=weak_ratio <= bound,
                )
            )
            strong += lam**p * estimate.primal_value
        result.strong_constants[seed] = strong / norm_p
        logger.debug("capacitary seed=%d: strong=%.4f", seed, result.strong_constants[seed])
    return result
