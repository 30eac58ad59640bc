"""
회전 불변 2α-안정 증분 샘플러

K_t^(α) 는 특성함수 e^{-t|ξ|^{2α}} 를 갖는 회전 불변 안정 분포의 밀도이므로,
커널 평가와 독립적인 몬테카를로 오라클로 쓸 수 있습니다.
n = 1 은 Chambers-Mallows-Stuck 변환, n ≥ 2 는 양의 α-안정 변수 A 로 섞은
서브가우시안 구성 √A·N(0, 2I) 를 사용합니다.
"""

import numpy as np

from fractrace.kernel.closed_form import unit_ball_volume
from fractrace.kernel.spec import KernelSpec


def _symmetric_cms(beta: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """E e^{iξX} = e^{-|ξ|^β} 인 대칭 β-안정 변수 (CMS)"""
    v = rng.uniform(-np.pi / 2.0, np.pi / 2.0, size=count)
    w = rng.exponential(1.0, size=count)
    if beta == 1.0:
        return np.tan(v)
    return (
        np.sin(beta * v)
        / np.cos(v) ** (1.0 / beta)
        * (np.cos((1.0 - beta) * v) / w) ** ((1.0 - beta) / beta)
    )


def _positive_stable(alpha: float, count: int, rng: np.random.Generator) -> np.ndarray:
    """라플라스 변환 E e^{-sA} = e^{-s^α} 인 양의 α-안정 변수 (Kanter 표현)"""
    u = rng.uniform(0.0, np.pi, size=count)
    w = rng.exponential(1.0, size=count)
    return (
        np.sin(alpha * u)
        / np.sin(u) ** (1.0 / alpha)
        * (np.sin((1.0 - alpha) * u) / w) ** ((1.0 - alpha) / alpha)
    )


def sample_stable(spec: KernelSpec, t: float, count: int, seed: int) -> np.ndarray:
    """
    밀도 K_t^(α) 를 갖는 i.i.d. 샘플을 생성합니다.

    Args:
        spec: 커널 사양 (0 < α < 1)
        t: 양의 시간 (척도 t^{1/2α})
        count: 샘플 수 ≥ 1
        seed: 난수 시드 (같은 시드 → 같은 샘플)

    Returns:
        (count, n) 배열

    Raises:
        ValueError: α = 1 (가우스 샘플러를 쓸 것), count < 1, t ≤ 0
    """
    if spec.alpha >= 1.0:
        raise ValueError("α = 1 은 가우스 커널입니다. 가우스 샘플러를 사용하세요")
    if count < 1:
        raise ValueError(f"count는 1 이상이어야 합니다: {count}")
    if t <= 0:
        raise ValueError(f"t는 양수여야 합니다: {t}")

    rng = np.random.default_rng(seed)
    scale = spec.time_scale(t)
    if spec.dim == 1:
        return (scale * _symmetric_cms(spec.beta, count, rng))[:, None]

    mixing = _positive_stable(spec.alpha, count, rng)
    gaussian = rng.normal(0.0, np.sqrt(2.0), size=(count, spec.dim))
    return scale * np.sqrt(mixing)[:, None] * gaussian


def empirical_density(samples: np.ndarray, radius: float, center: float = 0.0) -> float:
    """|X - center| < radius 인 비율을 공의 부피로 나눈 밀도 추정"""
    samples = np.asarray(samples, dtype=float)
    if samples.ndim == 1:
        samples = samples[:, None]
    n = samples.shape[1]
    inside = np.linalg.norm(samples - center, axis=1) < radius
    return float(np.mean(inside)) / (unit_ball_volume(n) * radius**n)


def richardson_density(samples: np.ndarray, radius: float) -> float:
    """반경 h, 2h 추정의 리처드슨 외삽 (4D(h) − D(2h))/3 로 원점 밀도를 추정"""
    return (4.0 * empirical_density(samples, radius) - empirical_density(samples, 2.0 * radius)) / 3.0
