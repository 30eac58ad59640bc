"""
수반 작용소 R_α^*, S_α^* 의 이산 측도 작용

R_α^* μ(x) = Σ_i w_i K_{t_i}(x − x_i),
S_α^* μ(t, x) = Σ_{i: t_i > t} w_i K_{t_i − t}(x − x_i)  (t_i = t 인 원자는 0 기여).
원자에 대한 정확한 합이며 μ 에 대한 구적은 없습니다.
"""

import numpy as np

from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.profile import get_profile
from fractrace.kernel.spec import KernelSpec
from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid, TimeAxis

QUERY_CHUNK = 4096


def _as_points(x_points: np.ndarray, dim: int) -> np.ndarray:
    pts = np.asarray(x_points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, dim)
    return pts


def _kernel_sum(
    mu: DiscreteMeasure,
    gaps: np.ndarray,
    points: np.ndarray,
    spec: KernelSpec,
) -> np.ndarray:
    profile = get_profile(spec)
    out = np.zeros(points.shape[0])
    if len(mu) == 0:
        return out
    for start in range(0, points.shape[0], QUERY_CHUNK):
        block = points[start : start + QUERY_CHUNK]
        dist = np.linalg.norm(block[:, None, :] - mu.points[None, :, :], axis=2)
        g = gaps[start : start + QUERY_CHUNK] if gaps.ndim == 2 else gaps[None, :]
        out[start : start + QUERY_CHUNK] = profile(g, dist) @ mu.weights
    return out


def adjoint_R(mu: DiscreteMeasure, x_points: np.ndarray, spec: KernelSpec) -> np.ndarray:
    """
    질의점마다 Σ_i w_i K_{t_i}(x − x_i) 를 반환합니다.

    Args:
        mu: 이산 측도 (모든 t_i > 0)
        x_points: (Q, n) 질의점
        spec: 커널 사양

    Returns:
        (Q,) 값 배열
    """
    points = _as_points(x_points, spec.dim)
    return _kernel_sum(mu, mu.times, points, spec)


def adjoint_S(
    mu: DiscreteMeasure,
    query_times: np.ndarray,
    query_points: np.ndarray,
    spec: KernelSpec,
) -> np.ndarray:
    """
    질의점 (t, x) 마다 Σ_{t_i > t} w_i K_{t_i − t}(x − x_i) 를 반환합니다.

    t_i ≤ t 인 원자는 기여하지 않습니다 (엄격한 부등식 규약).
    """
    times = np.asarray(query_times, dtype=float).reshape(-1)
    points = _as_points(query_points, spec.dim)
    if points.shape[0] != times.size:
        raise ValueError("질의 시간과 질의점 수가 다릅니다")
    gaps = mu.times[None, :] - times[:, None]
    # profile 은 t ≤ 0 에서 0 을 돌려준다
    return _kernel_sum(mu, gaps, points, spec)


def adjoint_R_field(mu: DiscreteMeasure, grid: SpatialGrid, spec: KernelSpec) -> SpatialField:
    """격자 노드에서 R_α^* μ"""
    values = adjoint_R(mu, grid.points(), spec)
    return SpatialField(grid, values.reshape(grid.shape))


def adjoint_S_field(
    mu: DiscreteMeasure,
    grid: SpatialGrid,
    time: TimeAxis,
    spec: KernelSpec,
) -> SpaceTimeField:
    """시공간 격자 노드에서 S_α^* μ"""
    points = grid.points()
    nodes = time.nodes()
    values = np.stack(
        [adjoint_S(mu, np.full(points.shape[0], t), points, spec) for t in nodes]
    )
    return SpaceTimeField(grid, time, values.reshape((time.steps + 1,) + grid.shape))
