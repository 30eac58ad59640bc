"""
격자 필드

상자 [−L, L]^n 위 주기 격자 (노드 −L + jh, j = 0..N−1, N = 2L/h) 의 SpatialField 와
균일 시간 노드 0 = t_0 < … < t_M = T 를 더한 SpaceTimeField.
"""

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np


@dataclass(frozen=True)
class SpatialGrid:
    """주기 공간 격자"""

    half_width: float
    spacing: float
    dim: int = 1

    def __post_init__(self) -> None:
        if self.spacing <= 0 or self.half_width <= 0:
            raise ValueError("L 과 h 는 양수여야 합니다")
        ratio = self.half_width / self.spacing
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            raise ValueError(f"L/h 는 정수여야 합니다: L={self.half_width}, h={self.spacing}")
        if self.dim < 1:
            raise ValueError("차원은 1 이상이어야 합니다")

    @property
    def nodes_per_axis(self) -> int:
        return 2 * int(round(self.half_width / self.spacing))

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.nodes_per_axis,) * self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def axis(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.nodes_per_axis)

    def mesh(self) -> Tuple[np.ndarray, ...]:
        """축별 좌표 배열 (indexing='ij')"""
        return tuple(np.meshgrid(*([self.axis()] * self.dim), indexing="ij"))

    def points(self) -> np.ndarray:
        """(N^n, n) 노드 좌표"""
        return np.stack([c.ravel() for c in self.mesh()], axis=1)

    def wavenumbers(self) -> Tuple[np.ndarray, ...]:
        """축별 이산 주파수 ξ = 2π·fftfreq(N, h) 의 메쉬"""
        xi = 2.0 * np.pi * np.fft.fftfreq(self.nodes_per_axis, d=self.spacing)
        return tuple(np.meshgrid(*([xi] * self.dim), indexing="ij"))

    def symbol(self, alpha: float) -> np.ndarray:
        """분수 라플라시안 승수 |ξ|^{2α}"""
        squared = sum(k * k for k in self.wavenumbers())
        return np.asarray(squared) ** alpha

    def refined(self) -> "SpatialGrid":
        return SpatialGrid(self.half_width, self.spacing / 2.0, self.dim)


@dataclass(frozen=True)
class TimeAxis:
    """균일 시간 노드 0 = t_0 < … < t_M = T"""

    horizon: float
    steps: int

    def __post_init__(self) -> None:
        if self.horizon <= 0:
            raise ValueError(f"T 는 양수여야 합니다: {self.horizon}")
        if self.steps < 1:
            raise ValueError(f"시간 단계 수는 1 이상이어야 합니다: {self.steps}")

    @property
    def dt(self) -> float:
        return self.horizon / self.steps

    def nodes(self) -> np.ndarray:
        return np.linspace(0.0, self.horizon, self.steps + 1)

    def refined(self) -> "TimeAxis":
        return TimeAxis(self.horizon, 2 * self.steps)


@dataclass(frozen=True, eq=False)
class SpatialField:
    """공간 격자 필드 f(x)"""

    grid: SpatialGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise ValueError(f"값 배열 모양 {values.shape} 이 격자 {self.grid.shape} 와 다릅니다")
        if not np.all(np.isfinite(values)):
            raise ValueError("필드 값이 유한하지 않습니다")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: SpatialGrid, func: Callable[..., np.ndarray]) -> "SpatialField":
        """좌표 메쉬를 받는 함수로 필드 생성"""
        return cls(grid, np.broadcast_to(func(*grid.mesh()), grid.shape).astype(float))

    @classmethod
    def zeros(cls, grid: SpatialGrid) -> "SpatialField":
        return cls(grid, np.zeros(grid.shape))


@dataclass(frozen=True, eq=False)
class SpaceTimeField:
    """시공간 격자 필드 g(t, x), values 모양은 (M+1,) + 공간 모양"""

    grid: SpatialGrid
    time: TimeAxis
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        expected = (self.time.steps + 1,) + self.grid.shape
        if values.shape != expected:
            raise ValueError(f"값 배열 모양 {values.shape} 이 {expected} 와 다릅니다")
        if not np.all(np.isfinite(values)):
            raise ValueError("필드 값이 유한하지 않습니다")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls,
        grid: SpatialGrid,
        time: TimeAxis,
        func: Callable[..., np.ndarray],
    ) -> "SpaceTimeField":
        """func(t, x1, ..., xn) 로 필드 생성"""
        t = time.nodes().reshape((-1,) + (1,) * grid.dim)
        mesh = [c[None, ...] for c in grid.mesh()]
        shape = (time.steps + 1,) + grid.shape
        return cls(grid, time, np.broadcast_to(func(t, *mesh), shape).astype(float))

    @classmethod
    def zeros(cls, grid: SpatialGrid, time: TimeAxis) -> "SpaceTimeField":
        return cls(grid, time, np.zeros((time.steps + 1,) + grid.shape))

    def slice(self, m: int) -> SpatialField:
        return SpatialField(self.grid, self.values[m])
