"""
로그-로그 기울기 적합과 순위 상관
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats


@dataclass(frozen=True)
class SlopeFit:
    """기울기와 95% 신뢰 반폭"""

    slope: float
    intercept: float
    half_width: float
    r_value: float
    points: int


def fit_loglog(x: Sequence[float], y: Sequence[float], confidence: float = 0.95) -> SlopeFit:
    """
    log y = a + b log x 의 최소제곱 적합

    Raises:
        ValueError: 점이 2개 미만이거나 양수가 아닌 값
    """
    x_arr = np.asarray(x, dtype=float)
    y_arr = np.asarray(y, dtype=float)
    if x_arr.size < 2 or x_arr.size != y_arr.size:
        raise ValueError("기울기 적합에는 같은 길이의 점 2개 이상이 필요합니다")
    if np.any(x_arr <= 0) or np.any(y_arr <= 0):
        raise ValueError("로그-로그 적합에는 양수 값만 쓸 수 있습니다")
    fit = stats.linregress(np.log(x_arr), np.log(y_arr))
    dof = x_arr.size - 2
    half = float(stats.t.ppf(0.5 + confidence / 2.0, dof) * fit.stderr) if dof > 0 else 0.0
    return SlopeFit(
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        half_width=half if math.isfinite(half) else 0.0,
        r_value=float(fit.rvalue),
        points=int(x_arr.size),
    )


def rank_correlation(a: Sequence[float], b: Sequence[float]) -> float:
    """스피어만 순위 상관 (상수 열이면 nan)"""
    result = stats.spearmanr(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    return float(result[0])
