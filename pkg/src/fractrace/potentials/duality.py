"""
Wolff 쌍대성 비율

lhs = ‖T_α^*μ‖_{p'}^{p'} (격자 구적 + 포락선 꼬리 보정), rhs = ∫ P μ dμ (정확).
S 변형에서 원자 측도의 연속 lhs 는 p < 1 + n/(2α) 일 때 발산하므로 (K_τ^{p'} 가 τ → 0 에서
비적분), S 값은 시간 중점 격자에서 정의되는 이산화 수준의 양입니다.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Literal, Tuple

import numpy as np

from fractrace.core.errors import GridCoverageError
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.closed_form import sphere_area
from fractrace.kernel.spec import KernelSpec
from fractrace.potentials.wolff import denominator_exponent, wolff_energy
from fractrace.semigroup.adjoints import adjoint_R, adjoint_S
from fractrace.semigroup.exponents import conjugate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualityGrid:
    """
    lhs 구적 격자

    Attributes:
        resolution: 가장 좁은 커널 폭 t_min^{1/2α} 당 셀 수
        margin: 지지집합 밖으로 t_max^{1/2α} 의 몇 배까지 덮을지
        time_cells: S 변형의 시간 중점 수
        coverage_tol: 허용 꼬리 비율
    """

    resolution: int = 16
    margin: float = 12.0
    time_cells: int = 64
    coverage_tol: float = 0.05

    def refined(self) -> "DualityGrid":
        return replace(self, resolution=2 * self.resolution, time_cells=2 * self.time_cells)


@dataclass(frozen=True)
class DualityResult:
    """lhs, rhs, ratio 와 lhs 에 더한 꼬리 보정"""

    lhs: float
    rhs: float
    ratio: float
    tail: float
    nodes: int


def _spatial_nodes(mu: DiscreteMeasure, alpha: float, grid: DualityGrid) -> Tuple[np.ndarray, float, float, np.ndarray]:
    """셀 중심 노드 (Q, n), 셀 부피, 반폭 L, 경계 노드 마스크"""
    inv = 1.0 / (2.0 * alpha)
    center = 0.5 * (mu.points.min(axis=0) + mu.points.max(axis=0))
    radius = float(np.max(np.linalg.norm(mu.points - center, axis=1)))
    h = float(mu.times.min()) ** inv / grid.resolution
    half = radius + grid.margin * float(mu.times.max()) ** inv
    cells = int(math.ceil(2.0 * half / h))
    h = 2.0 * half / cells
    axis = -half + h * (np.arange(cells) + 0.5)
    mesh = np.meshgrid(*([axis] * mu.dim), indexing="ij")
    index = np.meshgrid(*([np.arange(cells)] * mu.dim), indexing="ij")
    boundary = np.zeros(mesh[0].shape, dtype=bool)
    for idx in index:
        boundary |= (idx == 0) | (idx == cells - 1)
    nodes = np.stack([c.ravel() for c in mesh], axis=1) + center
    return nodes, h**mu.dim, half, boundary.ravel()


def _tail(values: np.ndarray, boundary: np.ndarray, p_prime: float, n: int, alpha: float, half: float) -> float:
    """|x| > L 에서 |x|^{-(n+2α)} 감쇠를 가정한 ∫ (T^*μ)^{p'} 의 꼬리"""
    edge = float(values[boundary].max()) if values.size else 0.0
    return edge**p_prime * sphere_area(n) * half**n / ((n + 2.0 * alpha) * p_prime - n)


def wolff_duality_ratio(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    variant: Literal["R", "S"] = "R",
    grid: DualityGrid = DualityGrid(),
) -> DualityResult:
    """
    ‖T_α^*μ‖_{p'}^{p'} 과 ∫ P_{αp}μ dμ 의 비

    Returns:
        DualityResult. μ = 0 이면 (0, 0, 1), rhs = 0 < lhs 이면 ratio = ∞

    Raises:
        GridCoverageError: 꼬리 보정이 lhs 의 coverage_tol 을 넘음
        RegimeError: S 변형에서 p ≥ 1 + n/(2α)
    """
    if mu.is_zero:
        return DualityResult(lhs=0.0, rhs=0.0, ratio=1.0, tail=0.0, nodes=0)
    n = mu.dim
    denominator_exponent(variant, n, alpha, p)
    spec = KernelSpec(alpha=alpha, dim=n)
    p_prime = conjugate(p)
    mu = mu.restricted(mu.weights > 0)

    nodes, cell, half, boundary = _spatial_nodes(mu, alpha, grid)
    if variant == "R":
        values = adjoint_R(mu, nodes, spec)
        bulk = float(np.sum(values**p_prime)) * cell
        tail = _tail(values, boundary, p_prime, n, alpha, half)
    else:
        horizon = float(mu.times.max())
        dt = horizon / grid.time_cells
        bulk = tail = 0.0
        for k in range(grid.time_cells):
            t = (k + 0.5) * dt
            values = adjoint_S(mu, np.full(nodes.shape[0], t), nodes, spec)
            bulk += float(np.sum(values**p_prime)) * cell * dt
            tail += _tail(values, boundary, p_prime, n, alpha, half) * dt

    lhs = bulk + tail
    if lhs > 0 and tail > grid.coverage_tol * lhs:
        raise GridCoverageError(
            f"쌍대성 격자가 포락선 유효 영역을 덮지 못합니다 (꼬리 비율 {tail / lhs:.3f}); margin 을 늘리세요",
            tail=tail,
        )
    rhs = wolff_energy(mu, p, alpha, variant)
    if rhs > 0:
        ratio = lhs / rhs
    else:
        ratio = math.inf if lhs > 0 else 1.0
    logger.debug(
        "duality %s p=%g α=%g: lhs=%.6e rhs=%.6e ratio=%.4f (노드 %d)",
        variant, p, alpha, lhs, rhs, ratio, nodes.shape[0],
    )
    return DualityResult(lhs=lhs, rhs=rhs, ratio=ratio, tail=tail, nodes=int(nodes.shape[0]))
