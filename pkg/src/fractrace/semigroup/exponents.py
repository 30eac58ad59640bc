"""
지수 설정 (p, q) 과 영역 판정
"""

import math
from dataclasses import dataclass
from typing import Optional

from fractrace.core.errors import RegimeError


def conjugate(p: float) -> float:
    """켤레 지수 p' = p/(p−1)"""
    if p <= 1:
        raise ValueError(f"지수는 1보다 커야 합니다: {p}")
    return p / (p - 1.0)


def s_critical(n: int, alpha: float) -> float:
    """S_α 경로의 상한 1 + n/(2α)"""
    return 1.0 + n / (2.0 * alpha)


def require_s_regime(p: float, n: int, alpha: float) -> None:
    """p < 1 + n/(2α) 가 아니면 RegimeError"""
    bound = s_critical(n, alpha)
    if not p < bound:
        raise RegimeError(
            f"S_α 경로는 p < 1 + n/(2α) = {bound:g} 가 필요합니다 (p={p:g}, n={n}, α={alpha:g})"
        )


def strichartz_exponent(n: int, alpha: float, p: float) -> float:
    """
    q̃ = p(1 + 2αp/(n + 2α − 2αp))

    Raises:
        RegimeError: 끝점 p ≥ 1 + n/(2α) (q̃ 무한)

    Examples:
        >>> strichartz_exponent(1, 0.5, 1.5)
        6.0
    """
    require_s_regime(p, n, alpha)
    return p * (1.0 + 2.0 * alpha * p / (n + 2.0 * alpha - 2.0 * alpha * p))


def regime(p: float, q: float) -> str:
    """'p<q' | 'p=q' | 'p>q'"""
    if math.isclose(p, q, rel_tol=0.0, abs_tol=1e-12):
        return "p=q"
    return "p<q" if p < q else "p>q"


@dataclass(frozen=True)
class ExponentConfig:
    """
    지수 쌍 (p, q)

    Attributes:
        p: (1, ∞)
        q: (1, ∞), 생략하면 p
    """

    p: float
    q: Optional[float] = None

    def __post_init__(self) -> None:
        if self.q is None:
            object.__setattr__(self, "q", self.p)
        for name, value in (("p", self.p), ("q", self.q)):
            if not (1.0 < float(value) < math.inf):  # type: ignore[arg-type]
                raise ValueError(f"{name} 는 (1, ∞) 범위여야 합니다: {value}")

    @property
    def p_prime(self) -> float:
        return conjugate(self.p)

    @property
    def q_prime(self) -> float:
        return conjugate(float(self.q))  # type: ignore[arg-type]

    @property
    def regime(self) -> str:
        return regime(self.p, float(self.q))  # type: ignore[arg-type]

    def require_s_regime(self, n: int, alpha: float) -> None:
        require_s_regime(self.p, n, alpha)

    def require_distinct(self) -> None:
        """Wolff 적분 경로는 p ≠ q 가 필요"""
        if self.regime == "p=q":
            raise RegimeError("Wolff 적분 조건은 p = q 에서 지수가 특이합니다")
