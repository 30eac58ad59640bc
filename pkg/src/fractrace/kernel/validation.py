"""
커널 검증: 질량 보존, 자기유사성, 양측 포락선 스캔
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaincc

from fractrace.kernel.closed_form import (
    Point,
    envelope_tail,
    sphere_area,
    tail_mass,
    unit_ball_volume,
)
from fractrace.kernel.numeric import evaluate
from fractrace.kernel.profile import TABLE_RADIUS, get_profile
from fractrace.kernel.spec import KernelSpec

logger = logging.getLogger(__name__)

DEFAULT_MASS_TOL = 1e-3


@dataclass(frozen=True)
class MassReport:
    """check_mass 결과"""

    mass: float
    defect: float
    tail: float
    envelope_tail: float
    cutoff: float
    passed: bool


@dataclass(frozen=True)
class SimilarityReport:
    """check_self_similarity 결과"""

    residual: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class EnvelopeScan:
    """envelope_ratio_scan 결과. α = 1 은 실패가 아니라 flagged 로 표시"""

    min_ratio: float
    max_ratio: float
    spread: float
    flagged: bool
    passed: bool


def check_mass(
    spec: KernelSpec,
    t: float,
    spatial_cutoff: Optional[float] = None,
    tol: Optional[float] = None,
) -> MassReport:
    """
    ∫ K_t = 1 을 수치 확인합니다.

    |x| ≤ R 는 log r 변수의 적응 구적으로 적분하고, 나머지는 꼬리 보정으로 더합니다
    (α = 1: 정확한 카이제곱 꼬리, α < 1: 점근 급수). 단위 상수 포락선 꼬리
    t|S^{n-1}|R^{-2α}/(2α) 도 함께 보고합니다.

    Args:
        spec: 커널 사양
        t: 양의 시간
        spatial_cutoff: 공간 절단 반경 R (None이면 자기유사 척도에 맞춰 선택)
        tol: 질량 결손 허용오차 (기본 1e-3)

    Returns:
        MassReport
    """
    if t <= 0:
        raise ValueError(f"t는 양수여야 합니다: {t}")
    tol = DEFAULT_MASS_TOL if tol is None else tol
    n = spec.dim
    scale = spec.time_scale(t)
    if spatial_cutoff is None:
        spatial_cutoff = (20.0 if spec.alpha == 1.0 else TABLE_RADIUS) * scale
    profile = get_profile(spec)

    r_min = 1e-8 * scale
    area = sphere_area(n)

    def integrand(u: float) -> float:
        r = math.exp(u)
        return float(area * profile(np.float64(t), np.float64(r)) * r**n)

    inner, _ = quad(
        integrand, math.log(r_min), math.log(spatial_cutoff),
        limit=400, epsabs=1e-13, epsrel=1e-11,
    )
    core = float(profile(np.float64(t), np.float64(0.0))) * unit_ball_volume(n) * r_min**n

    if spec.alpha == 1.0:
        tail = float(gammaincc(n / 2.0, spatial_cutoff**2 / (4.0 * t)))
    else:
        tail = tail_mass(spec, t, spatial_cutoff)

    mass = core + inner + tail
    defect = abs(mass - 1.0)
    logger.debug("check_mass α=%g n=%d t=%g: mass=%.12f", spec.alpha, n, t, mass)
    return MassReport(
        mass=mass,
        defect=defect,
        tail=tail,
        envelope_tail=envelope_tail(spec, t, spatial_cutoff),
        cutoff=spatial_cutoff,
        passed=defect <= tol,
    )


def check_self_similarity(
    spec: KernelSpec,
    t: float,
    x: Point,
    tol: Optional[float] = None,
) -> SimilarityReport:
    """
    |K_t(x) − t^{-n/2α} K_1(t^{-1/2α}x)| 를 두 번의 독립 평가로 계산합니다.

    Returns:
        잔차와 두 오차 한계의 합
    """
    if t <= 0:
        raise ValueError(f"t는 양수여야 합니다: {t}")
    scale = spec.time_scale(t)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    direct = evaluate(spec, t, x_arr, tol)
    unit = evaluate(spec, 1.0, x_arr / scale, tol)
    factor = scale ** (-spec.dim)
    residual = abs(direct.value - factor * unit.value)
    bound = direct.abs_error_bound + factor * unit.abs_error_bound
    return SimilarityReport(residual=residual, bound=bound, passed=residual <= bound)


def envelope_ratio_scan(
    spec: KernelSpec,
    t_grid: Sequence[float],
    x_grid: Sequence[float],
) -> EnvelopeScan:
    """
    K_t(x)·(t^{1/2α} + |x|)^{n+2α} / t 의 최솟값과 최댓값을 스캔합니다.

    Args:
        spec: 커널 사양
        t_grid: 양의 시간들
        x_grid: 반경 |x| 들

    Returns:
        EnvelopeScan (α = 1 은 다항식 하한 포락선이 점근적으로 깨지므로 flagged)
    """
    t = np.asarray(t_grid, dtype=float)
    r = np.abs(np.asarray(x_grid, dtype=float))
    if np.any(t <= 0):
        raise ValueError("모든 t는 양수여야 합니다")
    tt, rr = np.meshgrid(t, r, indexing="ij")
    values = get_profile(spec)(tt, rr)
    ratio = values * (tt ** (1.0 / spec.beta) + rr) ** (spec.dim + spec.beta) / tt

    min_ratio = float(ratio.min())
    max_ratio = float(ratio.max())
    spread = max_ratio / min_ratio if min_ratio > 0 else math.inf
    flagged = spec.alpha == 1.0
    if flagged:
        logger.warning("α = 1 포락선 스캔: 가우스 꼬리는 다항식 하한을 만족하지 않음 (spread=%.3e)", spread)
    passed = min_ratio > 0 and math.isfinite(max_ratio)
    return EnvelopeScan(
        min_ratio=min_ratio,
        max_ratio=max_ratio,
        spread=spread,
        flagged=flagged,
        passed=passed,
    )
