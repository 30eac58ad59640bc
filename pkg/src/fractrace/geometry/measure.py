"""
이산 측도

ℝ_+^{1+n} 위의 유한 비음 원자 측도 μ = Σ_i w_i δ_{(t_i, x_i)}.
모든 퍼텐셜/용량 계산의 입력입니다.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol, Sequence, Tuple

import numpy as np


class Region(Protocol):
    """벡터화된 포함 판정을 제공하는 시공간 영역"""

    def contains_points(self, times: np.ndarray, points: np.ndarray) -> np.ndarray:
        ...


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """
    이산 측도

    Attributes:
        times: (N,) 원자 시간, 모두 > 0
        points: (N, n) 원자 공간 위치
        weights: (N,) 비음 가중치
    """

    times: np.ndarray
    points: np.ndarray
    weights: np.ndarray
    total: float = field(init=False)

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float).reshape(-1)
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(times.size, -1) if times.size else points.reshape(0, 1)
        weights = np.array(self.weights, dtype=float).reshape(-1)

        if points.shape[0] != times.size or weights.size != times.size:
            raise ValueError("times, points, weights 의 원자 수가 일치하지 않습니다")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(points)) and np.all(np.isfinite(weights))):
            raise ValueError("측도에 유한하지 않은 값이 있습니다")
        if np.any(times <= 0):
            raise ValueError("모든 원자 시간은 양수여야 합니다 (t > 0)")
        if np.any(weights < 0):
            raise ValueError("가중치는 음수일 수 없습니다")

        for arr in (times, points, weights):
            arr.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "total", float(np.sum(weights)))

    @classmethod
    def from_atoms(cls, atoms: Iterable[Tuple[float, Sequence[float] | float, float]], dim: int = 1) -> "DiscreteMeasure":
        """(t, x, w) 목록으로 측도를 만듭니다."""
        rows = list(atoms)
        if not rows:
            return cls.zero(dim)
        times = np.array([a[0] for a in rows], dtype=float)
        points = np.array([np.atleast_1d(np.asarray(a[1], dtype=float)) for a in rows])
        weights = np.array([a[2] for a in rows], dtype=float)
        return cls(times, points, weights)

    @classmethod
    def zero(cls, dim: int = 1) -> "DiscreteMeasure":
        """영 측도"""
        return cls(np.zeros(0), np.zeros((0, dim)), np.zeros(0))

    @property
    def dim(self) -> int:
        """공간 차원 n"""
        return int(self.points.shape[1])

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def is_zero(self) -> bool:
        return self.total == 0.0

    def scaled(self, factor: float) -> "DiscreteMeasure":
        """c·μ"""
        if factor < 0:
            raise ValueError("배율은 음수일 수 없습니다")
        return DiscreteMeasure(self.times, self.points, self.weights * factor)

    def restricted(self, mask: np.ndarray) -> "DiscreteMeasure":
        """마스크가 참인 원자만 남긴 측도"""
        mask = np.asarray(mask, dtype=bool)
        return DiscreteMeasure(self.times[mask], self.points[mask], self.weights[mask])

    def dilated(self, factor: float, alpha: float) -> "DiscreteMeasure":
        """포물 확대 D_ε(t, x) = (ε^{2α}t, εx) 의 밀어내기 (가중치 유지)"""
        if factor <= 0:
            raise ValueError("확대 배율은 양수여야 합니다")
        return DiscreteMeasure(self.times * factor ** (2.0 * alpha), self.points * factor, self.weights)

    def union(self, other: "DiscreteMeasure") -> "DiscreteMeasure":
        """두 측도의 합"""
        if len(other) and len(self) and other.dim != self.dim:
            raise ValueError("차원이 다른 측도는 합칠 수 없습니다")
        return DiscreteMeasure(
            np.concatenate([self.times, other.times]),
            np.concatenate([self.points, other.points]),
            np.concatenate([self.weights, other.weights]),
        )


def measure_of_region(mu: DiscreteMeasure, region: Region) -> float:
    """
    영역 안 원자 가중치의 정확한 합 μ(region)

    Args:
        mu: 이산 측도
        region: ParabolicBall, DyadicCube, BoxRegion 등

    Returns:
        비음 실수
    """
    if len(mu) == 0:
        return 0.0
    mask = region.contains_points(mu.times, mu.points)
    return float(np.sum(mu.weights[mask]))


def save_measure(mu: DiscreteMeasure, path: Path) -> None:
    """CSV `t,x1[,x2],w` 로 저장"""
    path = Path(path)
    header = ["t"] + [f"x{i + 1}" for i in range(mu.dim)] + ["w"]
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for t, x, w in zip(mu.times, mu.points, mu.weights):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in x] + [repr(float(w))])


def load_measure(path: Path) -> DiscreteMeasure:
    """
    CSV `t,x1[,x2],w` 에서 측도를 읽습니다.

    Raises:
        FileNotFoundError: 파일 없음
        ValueError: 헤더 오류, t ≤ 0 원자, 음수 가중치
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"측도 파일을 찾을 수 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if not header or header[0].strip() != "t" or header[-1].strip() != "w" or len(header) < 3:
            raise ValueError(f"측도 CSV 헤더는 t,x1[,x2],w 형식이어야 합니다: {path}")
        dim = len(header) - 2
        rows = [[float(v) for v in row] for row in reader if row]

    if not rows:
        return DiscreteMeasure.zero(dim)
    data = np.array(rows, dtype=float)
    if np.any(data[:, 0] <= 0):
        raise ValueError(f"t ≤ 0 인 원자가 있습니다: {path}")
    if np.any(data[:, -1] < 0):
        raise ValueError(f"음수 가중치가 있습니다: {path}")
    return DiscreteMeasure(data[:, 0], data[:, 1:-1], data[:, -1])
