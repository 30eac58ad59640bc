"""
S 변형 평형 측도

쌍대 최적 μ (‖S^*μ‖_{p'} = 1) 에서 μ_K = C^{1/p'} μ 를 만들고 세 양
μ_K(K), ∫ (S^*μ_K)^{p'}, ∫ S((S^*μ_K)^{p'−1}) dμ_K 를 계산합니다.
이산 문제에서 둘째와 셋째는 대수적으로 같고, 첫째는 괄호 간격만큼 벗어납니다.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox
from fractrace.capacity.solver import (
    CapacityEstimate,
    SolverControls,
    build_problem,
    capacity_dual,
)
from fractrace.geometry.measure import DiscreteMeasure


@dataclass(frozen=True, eq=False)
class EquilibriumResult:
    """
    Attributes:
        mu_K: 평형 측도
        mass: μ_K(K)
        energy: ∫ (S^*μ_K)^{p'} dt dx
        pairing: ∫ S((S^*μ_K)^{p'−1}) dμ_K
        capacity: 사용한 용량 값 (괄호 중점)
        estimate: 용량 괄호
    """

    mu_K: DiscreteMeasure
    mass: float
    energy: float
    pairing: float
    capacity: float
    estimate: CapacityEstimate

    @property
    def identities(self) -> tuple[float, float, float]:
        return self.mass, self.energy, self.pairing

    @property
    def spread(self) -> float:
        """세 양의 최대 상대 차이"""
        values = np.array(self.identities)
        top = float(values.max())
        return float((top - values.min()) / top) if top > 0 else 0.0


def equilibrium_measure(
    K: CompactSetApprox,
    p: float,
    alpha: float,
    grid: CapacityGrid,
    controls: SolverControls = SolverControls(),
    estimate: Optional[CapacityEstimate] = None,
) -> EquilibriumResult:
    """
    Raises:
        RegimeError: p ≥ 1 + n/(2α)
    """
    problem = build_problem("S", K, p, alpha, grid)
    if estimate is None:
        estimate = capacity_dual("S", K, p, alpha, grid, controls, problem=problem)
    capacity = estimate.midpoint
    mu = estimate.witness_mu
    mu_K = mu.scaled(capacity ** (1.0 / problem.p_prime))

    a = problem.adjoint(mu_K.weights)
    energy = float(np.sum(problem.vol * a**problem.p_prime))
    pairing = float(np.dot(mu_K.weights, problem.potential(a ** (problem.p_prime - 1.0))))
    return EquilibriumResult(
        mu_K=mu_K,
        mass=mu_K.total,
        energy=energy,
        pairing=pairing,
        capacity=capacity,
        estimate=estimate,
    )
