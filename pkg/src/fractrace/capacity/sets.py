"""
콤팩트 집합 근사

K ⊂ ℝ_+^{1+n} 를 유한 표본 (t_j, x_j) 으로 근사합니다. 용량 계산은 n = 1 에서만 합니다.
"""

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Tuple

import numpy as np

from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.cube import BoxRegion
from fractrace.geometry.measure import DiscreteMeasure


@dataclass(frozen=True, eq=False)
class CompactSetApprox:
    """
    K 의 유한 표본

    Attributes:
        times: (J,) 모두 > 0
        points: (J, n)
        provenance: "ball" | "superlevel" | "custom" | "atoms"
    """

    times: np.ndarray
    points: np.ndarray
    provenance: str = "custom"
    box: BoxRegion = field(init=False)

    def __post_init__(self) -> None:
        times = np.array(self.times, dtype=float).reshape(-1)
        points = np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points.reshape(times.size, -1)
        if times.size == 0:
            raise ValueError("K 표본이 비어 있습니다")
        if points.shape[0] != times.size:
            raise ValueError("times 와 points 의 표본 수가 다릅니다")
        if np.any(times <= 0) or not np.all(np.isfinite(times)) or not np.all(np.isfinite(points)):
            raise ValueError("K 표본은 유한하고 t > 0 이어야 합니다")
        for arr in (times, points):
            arr.setflags(write=False)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "points", points)
        object.__setattr__(
            self,
            "box",
            BoxRegion(
                t_lo=float(times.min()),
                t_hi=float(times.max()),
                x_lo=tuple(float(v) for v in points.min(axis=0)),
                x_hi=tuple(float(v) for v in points.max(axis=0)),
            ),
        )

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def union(self, other: "CompactSetApprox") -> "CompactSetApprox":
        return CompactSetApprox(
            np.concatenate([self.times, other.times]),
            np.concatenate([self.points, other.points]),
            provenance=self.provenance if self.provenance == other.provenance else "custom",
        )

    def subset(self, mask: np.ndarray) -> "CompactSetApprox":
        mask = np.asarray(mask, dtype=bool)
        return CompactSetApprox(self.times[mask], self.points[mask], self.provenance)

    def contains_atoms(self, mu: DiscreteMeasure) -> np.ndarray:
        """원자가 표본점과 정확히 일치하는지 (N,) 마스크"""
        if len(mu) == 0:
            return np.zeros(0, dtype=bool)
        same_t = mu.times[:, None] == self.times[None, :]
        same_x = np.all(mu.points[:, None, :] == self.points[None, :, :], axis=2)
        return np.any(same_t & same_x, axis=1)


def ball_samples(ball: ParabolicBall, time_samples: int = 16, space_samples: int = 32) -> CompactSetApprox:
    """
    포물 공의 준균일 곱 표본 (n = 1)

    t_i = t0 + r^{2α}(1 + (i + ½)/n_t),  x_j = x0 + r(2(j + ½)/n_x − 1)
    """
    if ball.dim != 1:
        raise ValueError("용량 계산용 공 표본은 n = 1 만 지원합니다")
    thickness = ball.r ** (2.0 * ball.alpha)
    t = ball.t0 + thickness * (1.0 + (np.arange(time_samples) + 0.5) / time_samples)
    x = ball.x0[0] + ball.r * (2.0 * (np.arange(space_samples) + 0.5) / space_samples - 1.0)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    return CompactSetApprox(tt.ravel(), xx.ravel()[:, None], provenance="ball")


def atoms_set(mu: DiscreteMeasure, mask: np.ndarray | None = None) -> CompactSetApprox:
    """원자 위치들로 이루어진 유한 집합"""
    sub = mu if mask is None else mu.restricted(mask)
    return CompactSetApprox(sub.times, sub.points, provenance="atoms")


def save_set(K: CompactSetApprox, path: Path) -> None:
    """CSV `t,x1[,x2]`"""
    with open(Path(path), "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["t"] + [f"x{i + 1}" for i in range(K.dim)])
        for t, x in zip(K.times, K.points):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in x])


def load_set(path: Path) -> CompactSetApprox:
    """
    CSV `t,x1[,x2]` 에서 K 표본을 읽습니다.

    Raises:
        FileNotFoundError: 파일 없음
        ValueError: 헤더 오류 또는 빈 집합
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"집합 파일을 찾을 수 없습니다: {path}")
    with open(path, "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if not header or header[0].strip() != "t" or len(header) < 2:
            raise ValueError(f"집합 CSV 헤더는 t,x1[,x2] 형식이어야 합니다: {path}")
        rows = [[float(v) for v in row] for row in reader if row]
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return CompactSetApprox(data[:, 0], data[:, 1:], provenance="custom")


def bounding_scale(K: CompactSetApprox, alpha: float) -> Tuple[float, float]:
    """(공간 중심, 척도 max(공간 반폭, t_max^{1/2α}))"""
    lo, hi = K.box.x_lo[0], K.box.x_hi[0]
    center = 0.5 * (lo + hi)
    scale = max(0.5 * (hi - lo), K.box.t_hi ** (1.0 / (2.0 * alpha)))
    return center, scale
