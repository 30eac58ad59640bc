"""
포물 공 B_r^(α)(t0, x0) 와 포함 반경 구간
"""

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from fractrace.kernel.closed_form import unit_ball_volume


def _as_point(x: Sequence[float] | float | np.ndarray) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class ParabolicBall:
    """
    포물 공 {(t, x) : r^{2α} < t − t0 < 2r^{2α}, |x − x0| < r} (모두 엄격한 부등식)

    Attributes:
        t0: 기준 시간 ≥ 0
        x0: 중심 (길이 n 튜플)
        r: 반경 > 0
        alpha: 분수 지수
    """

    t0: float
    x0: Tuple[float, ...]
    r: float
    alpha: float

    def __post_init__(self) -> None:
        if self.t0 < 0:
            raise ValueError(f"t0는 음수일 수 없습니다: {self.t0}")
        if self.r <= 0:
            raise ValueError(f"반경은 양수여야 합니다: {self.r}")
        object.__setattr__(self, "x0", tuple(float(v) for v in _as_point(self.x0)))

    @property
    def dim(self) -> int:
        return len(self.x0)

    @property
    def time_window(self) -> Tuple[float, float]:
        """열린 시간 구간 (t0 + r^{2α}, t0 + 2r^{2α})"""
        thickness = self.r ** (2.0 * self.alpha)
        return self.t0 + thickness, self.t0 + 2.0 * thickness

    def contains_points(self, times: np.ndarray, points: np.ndarray) -> np.ndarray:
        """벡터화 포함 판정"""
        times = np.asarray(times, dtype=float)
        points = np.asarray(points, dtype=float).reshape(times.size, -1)
        lo, hi = self.time_window
        dist = np.linalg.norm(points - np.asarray(self.x0), axis=1)
        return (times > lo) & (times < hi) & (dist < self.r)

    def contains(self, t: float, x: Sequence[float] | float) -> bool:
        return bool(self.contains_points(np.array([t]), _as_point(x)[None, :])[0])


def ball_contains(ball: ParabolicBall, point: Tuple[float, Sequence[float] | float]) -> bool:
    """점 (t, x) 가 공 안에 있는지 (엄격한 부등식)"""
    t, x = point
    return ball.contains(t, x)


def ball_volume(ball: ParabolicBall) -> float:
    """르베그 부피 r^{2α} · ω_n r^n"""
    return ball.r ** (2.0 * ball.alpha) * unit_ball_volume(ball.dim) * ball.r**ball.dim


def containment_interval(
    atom: Tuple[float, Sequence[float] | float],
    eval_point: Tuple[float, Sequence[float] | float],
    alpha: float,
) -> Optional[Tuple[float, float]]:
    """
    원자가 B_r(t, x) 에 들어가는 반경들의 열린 구간

    ( ((s−t)/2)^{1/2α}, (s−t)^{1/2α} ) ∩ (|y−x|, ∞), s ≤ t 또는 빈 교집합이면 None.

    Examples:
        >>> containment_interval((1.0, 0.0), (0.0, 0.0), 0.5)
        (0.5, 1.0)
    """
    s, y = atom
    t, x = eval_point
    lo, hi = containment_intervals(
        np.array([s], dtype=float), _as_point(y)[None, :], t, _as_point(x), alpha
    )
    if lo[0] >= hi[0]:
        return None
    return float(lo[0]), float(hi[0])


def containment_intervals(
    times: np.ndarray,
    points: np.ndarray,
    t: float,
    x: np.ndarray,
    alpha: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    원자 배열에 대한 포함 반경 구간 (lo, hi). lo ≥ hi 이면 빈 구간입니다.
    """
    times = np.asarray(times, dtype=float)
    points = np.asarray(points, dtype=float).reshape(times.size, -1)
    gap = times - t
    inv = 1.0 / (2.0 * alpha)
    positive = gap > 0
    safe = np.where(positive, gap, 0.0)
    hi = np.where(positive, safe**inv, 0.0)
    lo = np.maximum((safe / 2.0) ** inv, np.linalg.norm(points - np.asarray(x, dtype=float), axis=1))
    lo = np.where(positive, lo, math.inf)
    return lo, hi


def maximal_windows(
    times: np.ndarray,
    points: np.ndarray,
    x: np.ndarray,
    alpha: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    원자가 B_r(r^{2α}, x) 에 들어가는 반경 구간

    시간 창이 (2r^{2α}, 3r^{2α}) 이므로 r ∈ ((s/3)^{1/2α}, (s/2)^{1/2α}) ∩ (|y−x|, ∞).
    """
    times = np.asarray(times, dtype=float)
    points = np.asarray(points, dtype=float).reshape(times.size, -1)
    inv = 1.0 / (2.0 * alpha)
    hi = (times / 2.0) ** inv
    lo = np.maximum((times / 3.0) ** inv, np.linalg.norm(points - np.asarray(x, dtype=float), axis=1))
    return lo, hi
