"""
용량 문제의 X 격자와 커널 결합 행렬

R 변형은 X = ℝ (공간 셀), S 변형은 X = ℝ_+^{1+1} (시간 × 공간 셀) 입니다.
결합 A_{jc} 는 셀 안 중점 부분노드에서의 커널 평균이고, refined() 가 셀 수를 두 배로
하고 부분노드 수를 절반으로 하므로 구적점이 그대로 유지되어 거친 셀의 결합은 자식 셀
결합의 평균과 정확히 같습니다.
"""

import logging
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np

from fractrace.capacity.sets import CompactSetApprox, bounding_scale
from fractrace.core.errors import InfeasibleCapacityError
from fractrace.kernel.profile import get_profile
from fractrace.kernel.spec import KernelSpec

logger = logging.getLogger(__name__)

ROW_CHUNK = 256


@dataclass(frozen=True)
class CapacityGrid:
    """
    X 의 셀 분할 (n = 1)

    Attributes:
        variant: "R" 또는 "S"
        x_lo, x_hi: 공간 범위
        cells: 공간 셀 수
        horizon: S 변형의 시간 범위 [0, horizon]
        time_cells: S 변형의 시간 셀 수
        subnodes: 축별 부분노드 수
    """

    variant: Literal["R", "S"]
    x_lo: float
    x_hi: float
    cells: int
    horizon: float = 0.0
    time_cells: int = 0
    subnodes: int = 2

    def __post_init__(self) -> None:
        if self.variant not in ("R", "S"):
            raise ValueError(f"알 수 없는 변형입니다: {self.variant}")
        if self.x_hi <= self.x_lo or self.cells < 1 or self.subnodes < 1:
            raise ValueError("격자 범위와 셀 수가 올바르지 않습니다")
        if self.variant == "S" and (self.horizon <= 0 or self.time_cells < 1):
            raise ValueError("S 변형 격자에는 양의 horizon 과 time_cells 가 필요합니다")

    @classmethod
    def for_set(
        cls,
        K: CompactSetApprox,
        variant: Literal["R", "S"],
        alpha: float,
        cells: int = 96,
        time_cells: int = 24,
        extent: float = 6.0,
        subnodes: int = 2,
    ) -> "CapacityGrid":
        """
        K 의 척도에 맞춘 격자 (공 B_r(0, x0) 표본이면 r 에 비례해 정확히 척도 변환됨)
        """
        center, scale = bounding_scale(K, alpha)
        return cls(
            variant=variant,
            x_lo=center - extent * scale,
            x_hi=center + extent * scale,
            cells=cells,
            horizon=float(K.box.t_hi) if variant == "S" else 0.0,
            time_cells=time_cells if variant == "S" else 0,
            subnodes=subnodes,
        )

    @property
    def spacing(self) -> float:
        return (self.x_hi - self.x_lo) / self.cells

    @property
    def dt(self) -> float:
        return self.horizon / self.time_cells if self.variant == "S" else 0.0

    @property
    def size(self) -> int:
        return self.cells * (self.time_cells if self.variant == "S" else 1)

    def volumes(self) -> np.ndarray:
        vol = self.spacing * (self.dt if self.variant == "S" else 1.0)
        return np.full(self.size, vol)

    def centers(self) -> tuple[np.ndarray, np.ndarray]:
        """셀 중심 (s, y). R 변형의 s 는 0"""
        y = self.x_lo + self.spacing * (np.arange(self.cells) + 0.5)
        if self.variant == "R":
            return np.zeros(self.cells), y
        s = self.dt * (np.arange(self.time_cells) + 0.5)
        ss, yy = np.meshgrid(s, y, indexing="ij")
        return ss.ravel(), yy.ravel()

    def refined(self) -> "CapacityGrid":
        """셀 수 2배, 부분노드 절반 (구적점 유지)"""
        if self.subnodes % 2:
            raise ValueError("정합 세분에는 짝수 부분노드가 필요합니다")
        return replace(
            self,
            cells=2 * self.cells,
            time_cells=2 * self.time_cells,
            subnodes=self.subnodes // 2,
        )

    def _subnodes(self) -> tuple[np.ndarray, np.ndarray]:
        """셀별 부분노드 (C, S) 좌표 (s, y)"""
        offsets = (np.arange(self.subnodes) + 0.5) / self.subnodes
        s_c, y_c = self.centers()
        dy = (offsets - 0.5) * self.spacing
        if self.variant == "R":
            return np.zeros((self.size, self.subnodes)), y_c[:, None] + dy[None, :]
        ds = (offsets - 0.5) * self.dt
        ds_m, dy_m = np.meshgrid(ds, dy, indexing="ij")
        return s_c[:, None] + ds_m.ravel()[None, :], y_c[:, None] + dy_m.ravel()[None, :]

    def coupling(self, K: CompactSetApprox, alpha: float) -> np.ndarray:
        """
        (J, C) 결합 행렬 A_{jc} = 셀 평균 K_{t_j − s}(x_j − y)·[s < t_j]

        Raises:
            InfeasibleCapacityError: 어떤 표본의 행이 전부 0
        """
        if K.dim != 1:
            raise ValueError("용량 결합은 n = 1 만 지원합니다")
        profile = get_profile(KernelSpec(alpha=alpha, dim=1))
        sub_s, sub_y = self._subnodes()
        out = np.empty((len(K), self.size))
        for start in range(0, len(K), ROW_CHUNK):
            t = K.times[start : start + ROW_CHUNK, None, None]
            x = K.points[start : start + ROW_CHUNK, 0, None, None]
            # R 변형은 sub_s = 0 이므로 간격이 t_j 그대로
            values = profile(t - sub_s[None, :, :], np.abs(x - sub_y[None, :, :]))
            out[start : start + ROW_CHUNK] = values.mean(axis=2)

        empty = ~np.any(out > 0, axis=1)
        if np.any(empty):
            j = int(np.argmax(empty))
            raise InfeasibleCapacityError(
                f"K 표본 (t={K.times[j]:.4g}, x={K.points[j, 0]:.4g}) 의 결합 행이 전부 0 입니다; "
                "이 격자에서 용량 문제가 정의되지 않습니다"
            )
        logger.debug("coupling %s: J=%d, C=%d", self.variant, len(K), self.size)
        return out
