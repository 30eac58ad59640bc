"""
분수 포물 최대함수

모두 스윕 조각 위에서 정확한 상한을 취합니다. μ(B_r)·r^{-n} 은 조각 (a, b) 에서
c·r^{-n} 이므로 열린 구간의 상한은 왼쪽 끝점 극한 c·a^{-n} 입니다.
"""

from typing import Sequence, Tuple

import numpy as np

from fractrace.geometry.ball import containment_intervals, maximal_windows
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.potentials.sweep import SweepPieces, sweep

EvalPoint = Tuple[float, Sequence[float] | float]


def _left_endpoint_sup(pieces: SweepPieces, n: int) -> float:
    loaded = pieces.masses > 0
    if not np.any(loaded):
        return 0.0
    return float(np.max(pieces.masses[loaded] / pieces.lower[loaded] ** n))


def maximal_R(mu: DiscreteMeasure, x: Sequence[float] | float, alpha: float) -> float:
    """
    M_αμ(x) = sup_r r^{-n} μ(B_r(r^{2α}, x))

    Examples:
        δ at (3, x), n=1, α=1/2 → 반경 창 (1, 1.5), 값 1
    """
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if len(mu) == 0:
        return 0.0
    lo, hi = maximal_windows(mu.times, mu.points, x_arr, alpha)
    return _left_endpoint_sup(sweep(lo, hi, mu.weights), x_arr.size)


def maximal_R_many(mu: DiscreteMeasure, x_points: np.ndarray, alpha: float) -> np.ndarray:
    """질의점 배열 (Q, n) 에서 maximal_R"""
    pts = np.asarray(x_points, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, max(mu.dim, 1))
    return np.array([maximal_R(mu, x, alpha) for x in pts])


def maximal_spacetime(mu: DiscreteMeasure, eval_point: EvalPoint, alpha: float) -> float:
    """
    M_αμ(t, x) = sup_r r^{-n} μ(B_r(t, x))

    Examples:
        δ at (t+1, x), n=1, α=1/2 → r ∈ (0.5, 1) 에서 sup r^{-1} = 2
    """
    t, x = eval_point
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if len(mu) == 0:
        return 0.0
    lo, hi = containment_intervals(mu.times, mu.points, float(t), x_arr, alpha)
    return _left_endpoint_sup(sweep(lo, hi, mu.weights), x_arr.size)


def maximal_centered(
    g: np.ndarray,
    mu: DiscreteMeasure,
    query: EvalPoint,
    alpha: float,
) -> float:
    """
    μ 에 대한 중심 Hardy–Littlewood 최대함수 sup_r μ(B_r)^{-1} ∫_{B_r} g dμ

    μ(B_r) = 0 인 반경 창은 건너뜁니다 (0/0 규약).
    """
    g = np.asarray(g, dtype=float).reshape(-1)
    if g.size != len(mu):
        raise ValueError(f"g 개수 {g.size} 가 원자 수 {len(mu)} 와 다릅니다")
    if np.any(g < 0):
        raise ValueError("g 는 비음이어야 합니다")
    if len(mu) == 0:
        return 0.0
    t, x = query
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    lo, hi = containment_intervals(mu.times, mu.points, float(t), x_arr, alpha)
    pieces = sweep(lo, hi, np.column_stack([mu.weights, g * mu.weights]))
    mass, integral = pieces.masses[:, 0], pieces.masses[:, 1]
    loaded = mass > 0
    if not np.any(loaded):
        return 0.0
    return float(np.max(integral[loaded] / mass[loaded]))
