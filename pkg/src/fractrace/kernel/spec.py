"""
커널 사양 타입

K_t^(α)(x) = (2π)^{-n} ∫ e^{ix·ξ} e^{-t|ξ|^{2α}} dξ 를 평가할 때 필요한
α, 차원, 주파수 절단, 구적 해상도를 고정합니다.
"""

import math
from dataclasses import dataclass
from typing import Optional

# 기본 허용오차: n=1 은 1e-6, n=2,3 은 1e-4
DEFAULT_TOL = {1: 1e-6}
DEFAULT_TOL_HIGH_DIM = 1e-4


@dataclass(frozen=True)
class KernelSpec:
    """
    분수 열 커널 사양

    Attributes:
        alpha: 분수 지수, (0, 1]
        dim: 공간 차원 n ≥ 1
        freq_cutoff: 푸리에 절단 반경. None이면 t와 허용오차로부터 자동 선택
        freq_nodes: 구적 해상도 (최소 패널 수, ≥ 64)
        tol: 요청 절대 허용오차. None이면 차원별 기본값
    """

    alpha: float
    dim: int = 1
    freq_cutoff: Optional[float] = None
    freq_nodes: int = 128
    tol: Optional[float] = None

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha는 (0, 1] 범위여야 합니다: {self.alpha}")
        if self.dim < 1:
            raise ValueError(f"차원은 1 이상이어야 합니다: {self.dim}")
        if self.freq_cutoff is not None and self.freq_cutoff <= 0:
            raise ValueError(f"freq_cutoff는 양수여야 합니다: {self.freq_cutoff}")
        if self.freq_nodes < 64:
            raise ValueError(f"freq_nodes는 64 이상이어야 합니다: {self.freq_nodes}")

    @property
    def tolerance(self) -> float:
        """요청 허용오차 (명시하지 않았으면 차원별 기본값)"""
        if self.tol is not None:
            return self.tol
        return DEFAULT_TOL.get(self.dim, DEFAULT_TOL_HIGH_DIM)

    @property
    def beta(self) -> float:
        """안정 지수 β = 2α"""
        return 2.0 * self.alpha

    @property
    def has_closed_form(self) -> bool:
        """α ∈ {1/2, 1} 이면 닫힌 형태로 평가"""
        return self.alpha in (0.5, 1.0)

    def time_scale(self, t: float) -> float:
        """자기유사 길이 척도 t^{1/2α}"""
        return t ** (1.0 / self.beta)


@dataclass(frozen=True)
class KernelValue:
    """
    커널 값과 절대 오차 한계

    닫힌 형태는 기계 정밀도 수준입니다. 수치 역변환의 한계는 두 부분의 합입니다.
    주파수 절단 꼬리는 불완전 감마 함수로 엄밀히 상계하고, 구적 오차는 n 노드와 n/2 노드
    가우스 규칙의 차이로 추정합니다. 뒤쪽은 경험적 추정이라 엄밀한 상계는 아닙니다.
    """

    value: float
    abs_error_bound: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"커널 값이 유한하지 않습니다: {self.value}")
        if self.abs_error_bound < 0:
            raise ValueError("abs_error_bound는 음수일 수 없습니다")
