"""
격자 L^p 노름과 L^q(μ) 노름
"""

from typing import Union

import numpy as np

from fractrace.geometry.measure import DiscreteMeasure
from fractrace.semigroup.fields import SpaceTimeField, SpatialField


def _check_exponent(p: float) -> None:
    if not 1.0 <= p < np.inf:
        raise ValueError(f"지수는 [1, ∞) 범위여야 합니다: {p}")


def cell_weights(field: Union[SpatialField, SpaceTimeField]) -> np.ndarray:
    """
    리만 합 가중치

    공간 필드는 노드마다 h^n, 시공간 필드는 우측 리만 합 (m ≥ 1 에서 dt·h^n, t_0 는 0).
    """
    if isinstance(field, SpaceTimeField):
        weights = np.full(field.values.shape, field.time.dt * field.grid.cell_volume)
        weights[0] = 0.0
        return weights
    return np.full(field.values.shape, field.grid.cell_volume)


def norm_lp(field: Union[SpatialField, SpaceTimeField], p: float) -> float:
    """
    (Σ |v|^p · vol)^{1/p}

    Examples:
        한 셀의 지시함수 → V^{1/p}
    """
    _check_exponent(p)
    total = float(np.sum(np.abs(field.values) ** p * cell_weights(field)))
    return total ** (1.0 / p)


def norm_lq_mu(values: np.ndarray, mu: DiscreteMeasure, q: float) -> float:
    """원자 값 v_i 에 대해 (Σ_i w_i |v_i|^q)^{1/q}"""
    _check_exponent(q)
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size != len(mu):
        raise ValueError(f"값 개수 {values.size} 가 원자 수 {len(mu)} 와 다릅니다")
    if len(mu) == 0:
        return 0.0
    return float(np.sum(mu.weights * np.abs(values) ** q)) ** (1.0 / q)


def sample_at_atoms(field: SpaceTimeField, mu: DiscreteMeasure) -> np.ndarray:
    """
    원자 위치의 필드 값 (시간은 선형 보간, 공간은 최근접 노드)

    상자 밖이나 시간 범위 밖의 원자는 0 을 받습니다.
    """
    if len(mu) == 0:
        return np.zeros(0)
    grid, time = field.grid, field.time
    pos = (mu.times / time.dt).clip(0.0, float(time.steps))
    lower = np.minimum(np.floor(pos).astype(int), time.steps - 1)
    frac = pos - lower
    idx = np.rint((mu.points + grid.half_width) / grid.spacing).astype(int)
    inside = np.all((idx >= 0) & (idx < grid.nodes_per_axis), axis=1) & (mu.times <= time.horizon)
    idx = idx.clip(0, grid.nodes_per_axis - 1)
    spatial = tuple(idx[:, d] for d in range(grid.dim))
    before = field.values[(lower,) + spatial]
    after = field.values[(lower + 1,) + spatial]
    return np.where(inside, (1.0 - frac) * before + frac * after, 0.0)
