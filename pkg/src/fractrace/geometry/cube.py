"""
α-진 입방체 (α-dyadic cube)

Q = τ + [k0·l^{2α}, (k0+1)·l^{2α}] × Π_i [k_i·l, (k_i+1)·l],  l = 2^m.
면은 닫혀 있고, 점 → 입방체 배정은 아래 모서리 포함 규칙 (floor) 으로 함수가 됩니다.
"""

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_SCALES = range(-20, 21)


@dataclass(frozen=True)
class BoxRegion:
    """닫힌 축 정렬 시공간 상자"""

    t_lo: float
    t_hi: float
    x_lo: Tuple[float, ...]
    x_hi: Tuple[float, ...]

    def contains_points(self, times: np.ndarray, points: np.ndarray) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        points = np.asarray(points, dtype=float).reshape(times.size, -1)
        inside_t = (times >= self.t_lo) & (times <= self.t_hi)
        inside_x = np.all((points >= np.asarray(self.x_lo)) & (points <= np.asarray(self.x_hi)), axis=1)
        return inside_t & inside_x

    def contains_box(self, other: "BoxRegion") -> bool:
        return (
            self.t_lo <= other.t_lo
            and other.t_hi <= self.t_hi
            and all(a <= b for a, b in zip(self.x_lo, other.x_lo))
            and all(b <= a for a, b in zip(self.x_hi, other.x_hi))
        )


@dataclass(frozen=True)
class DyadicCube:
    """
    α-진 입방체

    Attributes:
        m: 척도 (변 길이 l = 2^m)
        k0: 시간 인덱스 ≥ 0
        k: 공간 인덱스
        alpha: 분수 지수
        shift: 이동 τ ∈ ℝ_+^{1+n} (기본 0)
    """

    m: int
    k0: int
    k: Tuple[int, ...]
    alpha: float
    shift: Tuple[float, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.k0 < 0:
            raise ValueError(f"시간 인덱스는 음수일 수 없습니다: {self.k0}")
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        if not self.shift:
            object.__setattr__(self, "shift", (0.0,) * (1 + len(self.k)))
        if len(self.shift) != 1 + len(self.k):
            raise ValueError("shift 길이는 1 + n 이어야 합니다")

    @property
    def side(self) -> float:
        return 2.0**self.m

    @property
    def time_extent(self) -> float:
        return self.side ** (2.0 * self.alpha)

    def box(self) -> BoxRegion:
        """입방체를 닫힌 상자로"""
        l, dt = self.side, self.time_extent
        tau_t, tau_x = self.shift[0], self.shift[1:]
        return BoxRegion(
            t_lo=tau_t + self.k0 * dt,
            t_hi=tau_t + (self.k0 + 1) * dt,
            x_lo=tuple(tx + ki * l for tx, ki in zip(tau_x, self.k)),
            x_hi=tuple(tx + (ki + 1) * l for tx, ki in zip(tau_x, self.k)),
        )

    def contains_points(self, times: np.ndarray, points: np.ndarray) -> np.ndarray:
        return self.box().contains_points(times, points)


def cube_contains(cube: DyadicCube, point: Tuple[float, Sequence[float] | float]) -> bool:
    """닫힌 면 포함 판정"""
    t, x = point
    return bool(cube.contains_points(np.array([t]), np.atleast_1d(np.asarray(x, dtype=float))[None, :])[0])


def cube_index(
    t: float,
    x: np.ndarray,
    m: int,
    alpha: float,
    shift: Optional[Sequence[float]] = None,
) -> Tuple[int, Tuple[int, ...]]:
    """척도 m 에서 점을 담는 입방체의 (k0, k). 면 위의 점은 아래 모서리 쪽 입방체 (더 큰 인덱스)."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    tau = np.zeros(1 + x.size) if shift is None else np.asarray(shift, dtype=float)
    l = 2.0**m
    k0 = int(math.floor((t - tau[0]) / l ** (2.0 * alpha)))
    k = tuple(int(v) for v in np.floor((x - tau[1:]) / l))
    return k0, k


def cubes_containing(
    point: Tuple[float, Sequence[float] | float],
    scales: Iterable[int] = DEFAULT_SCALES,
    alpha: float = 0.5,
    shift: Optional[Sequence[float]] = None,
) -> List[DyadicCube]:
    """
    척도마다 정확히 하나씩, 점을 담는 α-진 입방체 목록

    Raises:
        ValueError: 점의 시간이 τ_t 보다 이름
    """
    t, x = point
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    tau = tuple(float(v) for v in (np.zeros(1 + x_arr.size) if shift is None else shift))
    if t < tau[0]:
        raise ValueError(f"점의 시간 {t} 이 이동 τ_t={tau[0]} 보다 이릅니다")
    cubes = []
    for m in scales:
        k0, k = cube_index(t, x_arr, m, alpha, tau)
        cubes.append(DyadicCube(m=m, k0=k0, k=k, alpha=alpha, shift=tau))
    return cubes


def dilate(cube: DyadicCube, factor: float = 2.0) -> BoxRegion:
    """
    중심을 유지하며 공간 변은 factor·l, 시간 폭은 (factor·l)^{2α} 로 늘린 상자 (t ≥ 0 으로 자름)
    """
    box = cube.box()
    l = cube.side
    t_center = 0.5 * (box.t_lo + box.t_hi)
    half_t = 0.5 * (factor * l) ** (2.0 * cube.alpha)
    half_x = 0.5 * factor * l
    centers = [0.5 * (a + b) for a, b in zip(box.x_lo, box.x_hi)]
    return BoxRegion(
        t_lo=max(0.0, t_center - half_t),
        t_hi=t_center + half_t,
        x_lo=tuple(c - half_x for c in centers),
        x_hi=tuple(c + half_x for c in centers),
    )
