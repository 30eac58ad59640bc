"""
상위 수준집합 E_λ(g) = {S_α g ≥ λ} 의 S-용량

g 를 거친 셀로 평균한 뒤, 용량 문제와 같은 결합 행렬로 셀 표본점에서 S_α g 를 계산합니다.
g/λ 가 E_λ 위에서 실행 가능한 주 후보이므로 이산 문제에서 약형 부등식
λ^p C(E_λ) ≤ ‖g‖_p^p 가 정확히 성립합니다.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox
from fractrace.capacity.solver import (
    CapacityEstimate,
    CouplingProblem,
    SolverControls,
    capacity_dual,
)
from fractrace.semigroup.exponents import require_s_regime
from fractrace.semigroup.fields import SpaceTimeField

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SuperlevelProblem:
    """
    거친 격자 위의 g 와 표본점별 S_α g

    Attributes:
        grid: S 변형 X 격자
        g_cells: (C,) 셀 평균 g
        samples: 셀 표본점 (시간 위쪽 끝, 공간 중심)
        coupling: (J, C) 결합 행렬
        potential: (J,) 표본점의 S_α g
    """

    grid: CapacityGrid
    g_cells: np.ndarray
    samples: CompactSetApprox
    coupling: np.ndarray
    potential: np.ndarray

    def g_norm(self, p: float) -> float:
        """거친 격자의 ‖g‖_p"""
        return float(np.sum(self.grid.volumes() * np.abs(self.g_cells) ** p)) ** (1.0 / p)

    def level_mask(self, lam: float) -> np.ndarray:
        return self.potential >= lam


def superlevel_problem(g: SpaceTimeField, alpha: float, coarsening: int = 4) -> SuperlevelProblem:
    """
    Args:
        g: n = 1 시공간 필드
        alpha: 분수 지수
        coarsening: 시간·공간 셀 병합 배수 (M, N 의 약수)
    """
    grid_f, time_f = g.grid, g.time
    if grid_f.dim != 1:
        raise ValueError("상위 수준집합 용량은 n = 1 만 지원합니다")
    c = int(coarsening)
    N, M = grid_f.nodes_per_axis, time_f.steps
    if c < 1 or N % c or M % c:
        raise ValueError(f"coarsening={c} 은 공간 노드 {N} 와 시간 단계 {M} 의 약수여야 합니다")

    h = grid_f.spacing
    grid = CapacityGrid(
        variant="S",
        x_lo=-grid_f.half_width - 0.5 * h,
        x_hi=grid_f.half_width - 0.5 * h,
        cells=N // c,
        horizon=time_f.horizon,
        time_cells=M // c,
        subnodes=1,
    )
    # 시간 셀 (k cΔt, (k+1) cΔt] 는 노드 m = kc+1 .. (k+1)c 의 우측 리만 값
    blocks = g.values[1:].reshape(M // c, c, N // c, c)
    g_cells = blocks.mean(axis=(1, 3)).ravel()

    s_c, y_c = grid.centers()
    samples = CompactSetApprox(s_c + 0.5 * grid.dt, y_c[:, None], provenance="superlevel")
    coupling = grid.coupling(samples, alpha)
    potential = coupling @ (grid.volumes() * g_cells)
    return SuperlevelProblem(grid, g_cells, samples, coupling, potential)


def superlevel_capacity(
    g: SpaceTimeField,
    lam: float,
    p: float,
    alpha: float,
    coarsening: int = 4,
    controls: SolverControls = SolverControls(),
    prepared: Optional[SuperlevelProblem] = None,
) -> CapacityEstimate:
    """
    C_p^{(S_α)}(E_λ(g)) 괄호. E_λ 가 비면 0.

    Raises:
        RegimeError: p ≥ 1 + n/(2α)
    """
    if lam <= 0:
        raise ValueError(f"λ 는 양수여야 합니다: {lam}")
    require_s_regime(p, 1, alpha)
    sp = prepared or superlevel_problem(g, alpha, coarsening)
    mask = sp.level_mask(lam)
    if not np.any(mask):
        return CapacityEstimate.empty(sp.grid.size)

    K = sp.samples.subset(mask)
    problem = CouplingProblem(A=sp.coupling[mask], vol=sp.grid.volumes(), p=p)
    candidate = np.maximum(sp.g_cells, 0.0) / lam
    estimate = capacity_dual("S", K, p, alpha, sp.grid, controls, candidates=[candidate], problem=problem)
    logger.debug("superlevel λ=%g: 표본 %d개, primal=%.4e", lam, len(K), estimate.primal_value)
    return estimate
