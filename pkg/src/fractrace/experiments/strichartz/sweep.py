"""
Strichartz 비율 ‖S_α g‖_{L^q̃} / ‖g‖_{L^p} 스윕

q̃ = p(1 + 2αp/(n + 2α − 2αp)) 에서 비율은 포물 재척도 g_λ(t, x) = g(λ^{2α}t, λx) 에 대해
불변이므로, 같은 격자에서 재척도한 시행과 세분 격자에서 같은 시행을 다시 잽니다.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, List

import numpy as np

from fractrace.kernel.spec import KernelSpec
from fractrace.semigroup.exponents import strichartz_exponent
from fractrace.semigroup.fields import SpaceTimeField, SpatialGrid, TimeAxis
from fractrace.semigroup.norms import norm_lp
from fractrace.semigroup.operators import apply_S

logger = logging.getLogger(__name__)


def _smooth_bump(z: np.ndarray) -> np.ndarray:
    """exp(−1/(1 − z²)), |z| ≥ 1 에서 0"""
    out = np.zeros_like(z, dtype=float)
    inside = np.abs(z) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - z[inside] ** 2))
    return out


@dataclass(frozen=True)
class StrichartzTrial:
    """콤팩트 지지 C^∞ 시행 함수 a·b((t − t_c)/w_t)·b(|x − x_c|/w_x)"""

    t_center: float
    t_width: float
    x_center: tuple
    x_width: float
    amplitude: float

    def function(self, scale: float = 1.0, alpha: float = 0.5) -> Callable[..., np.ndarray]:
        """g_λ(t, x) = g(λ^{2α}t, λx) 의 평가 함수 (λ = scale)"""
        time_scale = scale ** (2.0 * alpha)

        def g(t: np.ndarray, *x: np.ndarray) -> np.ndarray:
            radius = np.sqrt(sum((scale * xi - c) ** 2 for xi, c in zip(x, self.x_center)))
            in_time = _smooth_bump((time_scale * t - self.t_center) / self.t_width)
            return self.amplitude * in_time * _smooth_bump(radius / self.x_width)

        return g


def random_trials(count: int, seed: int, dim: int = 1) -> List[StrichartzTrial]:
    """공간 폭 1.5–3, 중심 |x_i| ≤ 3, 시간 중심 1.5–3, 시간 폭 1–2"""
    rng = np.random.default_rng(seed)
    return [
        StrichartzTrial(
            t_center=float(rng.uniform(1.5, 3.0)),
            t_width=float(rng.uniform(1.0, 2.0)),
            x_center=tuple(float(v) for v in rng.uniform(-3.0, 3.0, size=dim)),
            x_width=float(rng.uniform(1.5, 3.0)),
            amplitude=float(rng.uniform(0.5, 2.0)),
        )
        for _ in range(count)
    ]


def strichartz_ratio(g: SpaceTimeField, alpha: float, p: float) -> float:
    """
    ‖S_α g‖_{L^q̃} / ‖g‖_{L^p} (g = 0 이면 0)

    Raises:
        RegimeError: 끝점 p ≥ 1 + n/(2α)
        AliasingError: g 의 지지집합이 바깥 1/4 영역에 닿음
    """
    q_tilde = strichartz_exponent(g.grid.dim, alpha, p)
    denominator = norm_lp(g, p)
    if denominator == 0.0:
        return 0.0
    image = apply_S(g, KernelSpec(alpha, g.grid.dim))
    return norm_lp(image, q_tilde) / denominator


@dataclass(frozen=True)
class StrichartzRow:
    trial: int
    ratio: float
    rescaled_ratio: float
    refined_ratio: float


@dataclass
class StrichartzResult:
    """
    Attributes:
        q_tilde: Strichartz 지수
        rows: 시행별 비율
    """

    alpha: float
    p: float
    q_tilde: float
    rescale: float
    rows: List[StrichartzRow] = field(default_factory=list)

    def _max(self, attr: str) -> float:
        return max((getattr(r, attr) for r in self.rows), default=0.0)

    @property
    def max_ratio(self) -> float:
        return self._max("ratio")

    @property
    def max_rescaled(self) -> float:
        return self._max("rescaled_ratio")

    @property
    def max_refined(self) -> float:
        return self._max("refined_ratio")

    @property
    def rescale_drift(self) -> float:
        """|max_rescaled/max − 1|"""
        return abs(self.max_rescaled / self.max_ratio - 1.0) if self.max_ratio else 0.0

    @property
    def refine_drift(self) -> float:
        return abs(self.max_refined / self.max_ratio - 1.0) if self.max_ratio else 0.0


def strichartz_sweep(
    alpha: float,
    p: float,
    trials: int = 12,
    seed: int = 0,
    dim: int = 1,
    half_width: float = 16.0,
    spacing: float = 0.125,
    horizon: float = 8.0,
    time_steps: int = 128,
    rescale: float = 2.0,
) -> StrichartzResult:
    """
    시드 고정 시행들의 Strichartz 비율과 재척도·세분 안정성

    Raises:
        RegimeError: 끝점 p ≥ 1 + n/(2α) (q̃ 무한)
    """
    q_tilde = strichartz_exponent(dim, alpha, p)
    grid = SpatialGrid(half_width, spacing, dim)
    time = TimeAxis(horizon, time_steps)
    fine_grid, fine_time = grid.refined(), time.refined()

    result = StrichartzResult(alpha=alpha, p=p, q_tilde=q_tilde, rescale=rescale)
    for k, trial in enumerate(random_trials(trials, seed, dim)):
        base = SpaceTimeField.from_function(grid, time, trial.function(1.0, alpha))
        scaled = SpaceTimeField.from_function(grid, time, trial.function(rescale, alpha))
        fine = SpaceTimeField.from_function(fine_grid, fine_time, trial.function(1.0, alpha))
        row = StrichartzRow(
            trial=k,
            ratio=strichartz_ratio(base, alpha, p),
            rescaled_ratio=strichartz_ratio(scaled, alpha, p),
            refined_ratio=strichartz_ratio(fine, alpha, p),
        )
        result.rows.append(row)
        logger.debug(
            "strichartz trial %d: %.5f / %.5f / %.5f", k, row.ratio, row.rescaled_ratio, row.refined_ratio
        )
    return result
