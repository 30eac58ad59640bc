"""
닫힌 형태 커널과 해석적 상수

α = 1 (가우스 열 커널), α = 1/2 (푸아송 커널)의 닫힌 형태와,
모든 α 에서 정확히 알려진 원점 값 및 큰 |x| 점근 급수 계수를 제공합니다.
"""

import math
from typing import Sequence, Union

import numpy as np
from scipy.special import gamma

from fractrace.kernel.spec import KernelSpec, KernelValue

Point = Union[float, Sequence[float], np.ndarray]

_MACHINE_REL = 8.0 * np.finfo(float).eps


def sphere_area(n: int) -> float:
    """단위 구면 S^{n-1} 의 넓이 |S^{n-1}| = 2π^{n/2}/Γ(n/2)"""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def unit_ball_volume(n: int) -> float:
    """단위 공의 부피 ω_n = π^{n/2}/Γ(n/2 + 1)"""
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


def radial_constant(n: int) -> float:
    """반경 축소 상수 (2π)^{-n}|S^{n-1}|"""
    return sphere_area(n) / (2.0 * math.pi) ** n


def point_norm(x: Point) -> float:
    """스칼라 또는 벡터 점의 유클리드 노름"""
    return float(np.linalg.norm(np.atleast_1d(np.asarray(x, dtype=float))))


def closed_form_values(alpha: float, n: int, t: np.ndarray, r: np.ndarray) -> np.ndarray:
    """
    α ∈ {1/2, 1} 커널의 벡터화 평가 (t > 0 가정)

    Args:
        alpha: 0.5 또는 1.0
        n: 차원
        t: 시간 배열
        r: |x| 배열

    Returns:
        K_t(x) 배열
    """
    t = np.asarray(t, dtype=float)
    r = np.asarray(r, dtype=float)
    if alpha == 1.0:
        return (4.0 * np.pi * t) ** (-n / 2.0) * np.exp(-(r * r) / (4.0 * t))
    if alpha == 0.5:
        c = math.pi ** (-(n + 1) / 2.0) * math.gamma((n + 1) / 2.0)
        return c * t / (t * t + r * r) ** ((n + 1) / 2.0)
    raise ValueError(f"닫힌 형태는 α ∈ {{1/2, 1}} 에서만 존재합니다: {alpha}")


def eval_closed_form(spec: KernelSpec, t: float, x: Point) -> KernelValue:
    """
    α ∈ {1/2, 1} 에서 커널을 닫힌 형태로 평가합니다.

    Args:
        spec: 커널 사양 (alpha 는 정확히 0.5 또는 1)
        t: 양의 시간
        x: ℝ^n 의 점

    Returns:
        기계 정밀도 수준의 오차 한계를 가진 KernelValue

    Raises:
        ValueError: alpha 가 {1/2, 1} 밖이거나 t ≤ 0
    """
    if not spec.has_closed_form:
        raise ValueError(f"닫힌 형태는 α ∈ {{1/2, 1}} 에서만 존재합니다: {spec.alpha}")
    if t <= 0:
        raise ValueError(f"t는 양수여야 합니다: {t}")

    value = float(closed_form_values(spec.alpha, spec.dim, np.float64(t), np.float64(point_norm(x))))
    return KernelValue(value=value, abs_error_bound=_MACHINE_REL * value)


def origin_value(spec: KernelSpec, t: float) -> float:
    """
    원점 값 K_t(0) = (2π)^{-n}|S^{n-1}| Γ(n/2α)/(2α) · t^{-n/2α}

    모든 α 에서 정확합니다 (α=0.75, n=1, t=1 → Γ(5/3)/π).
    """
    if t <= 0:
        raise ValueError(f"t는 양수여야 합니다: {t}")
    a = spec.dim / spec.beta
    return radial_constant(spec.dim) * math.gamma(a) / spec.beta * t ** (-a)


def tail_coefficients(spec: KernelSpec, terms: int = 4) -> np.ndarray:
    """
    큰 |x| 점근 급수 K_1(x) ~ Σ_k a_k |x|^{-(n+kβ)} 의 계수 a_k (k = 1..terms)

    a_k = (-1)^{k+1}/k! · 2^{kβ} π^{-n/2-1} Γ(kβ/2 + 1) Γ((n+kβ)/2) sin(πkβ/2).
    α = 1 에서는 모든 계수가 0 (가우스 꼬리는 다항식보다 빨리 감소).
    """
    n, beta = spec.dim, spec.beta
    k = np.arange(1, terms + 1, dtype=float)
    sign = np.where(k % 2 == 1, 1.0, -1.0)
    coeffs = (
        sign
        / gamma(k + 1.0)
        * 2.0 ** (k * beta)
        * math.pi ** (-n / 2.0 - 1.0)
        * gamma(k * beta / 2.0 + 1.0)
        * gamma((n + k * beta) / 2.0)
        * np.sin(np.pi * k * beta / 2.0)
    )
    if spec.alpha == 1.0:
        coeffs[:] = 0.0
    return coeffs


def tail_constant(spec: KernelSpec) -> float:
    """K_1(x) ~ c|x|^{-(n+2α)} 의 선도 상수 c"""
    return float(tail_coefficients(spec, terms=1)[0])


def tail_series(spec: KernelSpec, z: np.ndarray, terms: int = 4) -> np.ndarray:
    """큰 z 에서 K_1 의 점근 급수 값"""
    z = np.asarray(z, dtype=float)
    coeffs = tail_coefficients(spec, terms)
    k = np.arange(1, terms + 1, dtype=float)
    powers = z[..., None] ** (-(spec.dim + k * spec.beta))
    return np.sum(coeffs * powers, axis=-1)


def tail_mass(spec: KernelSpec, t: float, radius: float, terms: int = 4) -> float:
    """
    ∫_{|x|>R} K_t(x) dx 의 점근 급수 근사 (α < 1)

    K_t(x) ~ Σ a_k t^k |x|^{-(n+kβ)} 이므로 각 항은 |S^{n-1}| a_k t^k R^{-kβ}/(kβ).
    """
    coeffs = tail_coefficients(spec, terms)
    k = np.arange(1, terms + 1, dtype=float)
    beta = spec.beta
    return float(
        sphere_area(spec.dim) * np.sum(coeffs * t**k * radius ** (-k * beta) / (k * beta))
    )


def envelope_tail(spec: KernelSpec, t: float, radius: float) -> float:
    """단위 상수 포락선 꼬리 ∫_{|x|>R} t|x|^{-(n+2α)} dx = t|S^{n-1}|R^{-2α}/(2α)"""
    return t * sphere_area(spec.dim) * radius ** (-spec.beta) / spec.beta
