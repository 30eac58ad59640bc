"""
내장 측도 family

모두 연속 측도의 원자화이며 셀 가중치는 셀의 르베그 부피 (또는 명시한 질량) 입니다.
이 family 는 보고서에서 "built-in (our choice)" 로 표시됩니다.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence

import numpy as np

from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import DiscreteMeasure, load_measure, measure_of_region
from fractrace.kernel.closed_form import unit_ball_volume


def _centers(lo: float, hi: float, cells: int) -> np.ndarray:
    width = (hi - lo) / cells
    return lo + width * (np.arange(cells) + 0.5)


def dirac(t: float = 1.0, x: float = 0.0, weight: float = 1.0, dim: int = 1) -> DiscreteMeasure:
    """w·δ_{(t, x)}"""
    return DiscreteMeasure(np.array([t]), np.full((1, dim), x, dtype=float), np.array([weight]))


def slab(
    t_lo: float = 1.0,
    t_hi: float = 2.0,
    x_lo: float = -1.0,
    x_hi: float = 1.0,
    time_cells: int = 16,
    space_cells: int = 32,
    mass: float | None = None,
) -> DiscreteMeasure:
    """
    [t_lo, t_hi] × [x_lo, x_hi] 위 르베그 측도의 원자화 (n = 1)

    mass 를 주면 전체 질량이 mass 가 되도록 균일 재조정합니다.
    """
    t = _centers(t_lo, t_hi, time_cells)
    x = _centers(x_lo, x_hi, space_cells)
    tt, xx = np.meshgrid(t, x, indexing="ij")
    cell = (t_hi - t_lo) / time_cells * (x_hi - x_lo) / space_cells
    weights = np.full(tt.size, cell)
    if mass is not None:
        weights *= mass / weights.sum()
    return DiscreteMeasure(tt.ravel(), xx.ravel()[:, None], weights)


def hyperplane(t1: float = 1.0, x_lo: float = -1.0, x_hi: float = 1.0, cells: int = 32) -> DiscreteMeasure:
    """시간 단면 {t = t1} 위 dx 의 원자화"""
    x = _centers(x_lo, x_hi, cells)
    return DiscreteMeasure(np.full(cells, t1), x[:, None], np.full(cells, (x_hi - x_lo) / cells))


def two_scale(fine: float = 0.1, coarse: float = 1.0, mass_ratio: float = 1.0) -> DiscreteMeasure:
    """서로 다른 척도의 두 slab 합 (거친 slab + 같은 질량의 좁은 덩어리)"""
    big = slab(1.0, 1.0 + coarse, -coarse, coarse, 8, 16)
    small = slab(1.0, 1.0 + fine, -fine, fine, 4, 8, mass=big.total * mass_ratio)
    return big.union(small)


def thin_slab(thickness: float = 0.25, mass: float = 2.0, space_cells: int = 64) -> DiscreteMeasure:
    """[h, 2h] × [−1, 1] slab, 질량 고정. h → 0 이면 초기 시각 단면 위 dx 로 모입니다."""
    return slab(thickness, 2.0 * thickness, -1.0, 1.0, 4, space_cells, mass=mass)


def chain(count: int = 8, alpha: float = 0.5, seed: int = 0) -> DiscreteMeasure:
    """
    사슬 측도: 모든 i < j 에 대해 |y_j − y_i| < (s_j − s_i)^{1/2α}

    앞선 원자의 전진 공 안에 모든 뒤 원자가 들어가므로 마지막 원자를 빼면 Wolff 퍼텐셜이 양수입니다.
    """
    rng = np.random.default_rng(seed)
    gaps = rng.uniform(0.5, 1.5, size=count)
    times = 0.5 + np.cumsum(gaps)
    jitter = 0.25 * 0.5 ** (1.0 / (2.0 * alpha))
    points = rng.uniform(-jitter, jitter, size=(count, 1))
    weights = rng.uniform(0.5, 1.5, size=count)
    return DiscreteMeasure(times, points, weights)


def random_measure(
    count: int = 12,
    dim: int = 1,
    seed: int = 0,
    t_range: tuple = (0.5, 3.0),
    x_range: tuple = (-2.0, 2.0),
) -> DiscreteMeasure:
    """균일 난수 원자"""
    rng = np.random.default_rng(seed)
    times = rng.uniform(*t_range, size=count)
    points = rng.uniform(*x_range, size=(count, dim))
    weights = rng.uniform(0.1, 1.0, size=count)
    return DiscreteMeasure(times, points, weights)


BUILTIN_FAMILIES: Dict[str, Callable[..., DiscreteMeasure]] = {
    "dirac": dirac,
    "slab": slab,
    "hyperplane": hyperplane,
    "two_scale": two_scale,
    "thin_slab": thin_slab,
    "chain": chain,
    "random": random_measure,
}


def build_measure(source: str, **params: Any) -> DiscreteMeasure:
    """
    "file:<경로>" 또는 내장 family 이름

    Raises:
        ValueError: 알 수 없는 family
    """
    if source.startswith("file:"):
        return load_measure(Path(source[len("file:"):]))
    if source not in BUILTIN_FAMILIES:
        raise ValueError(f"알 수 없는 측도 family 입니다: {source} (가능: {', '.join(BUILTIN_FAMILIES)})")
    return BUILTIN_FAMILIES[source](**params)


def dilation_family(base: DiscreteMeasure, factors, alpha: float) -> Dict[float, DiscreteMeasure]:
    """포물 확대 D_ε μ (가중치 유지)"""
    return {float(eps): base.dilated(float(eps), alpha) for eps in factors}


def lebesgue_ball_check(alpha: float, r: float = 0.5, cells: int = 64) -> Dict[str, float]:
    """
    dt dx 원자화에서 μ(B_r) 와 r^{n+2α}·ω_n 비교 (n = 1)

    공 B_r(0, 0) 의 시간 창 (r^{2α}, 2r^{2α}) 을 셀 경계에 맞춰 덮습니다.
    """
    thickness = r ** (2.0 * alpha)
    mu = slab(0.0 + thickness * 0.5, thickness * 2.5, -2.0 * r, 2.0 * r, 2 * cells, 4 * cells)
    ball = ParabolicBall(0.0, (0.0,), r, alpha)
    measured = measure_of_region(mu, ball)
    expected = r ** (1.0 + 2.0 * alpha) * unit_ball_volume(1)
    return {"measured": measured, "expected": expected, "relative_error": abs(measured - expected) / expected}


@dataclass(frozen=True)
class FamilyMember:
    """정리 일관성 family 의 한 측도 (family 이름, 매개변수)"""

    family: str
    parameter: float
    measure: DiscreteMeasure


def consistency_family(
    base: DiscreteMeasure,
    alpha: float,
    dilations: Sequence[float] = (0.5, 0.75, 1.0, 1.5, 2.0),
    thicknesses: Sequence[float] = (0.5, 0.25, 0.125, 0.0625),
    fine_scales: Sequence[float] = (0.4, 0.2, 0.1, 0.05),
) -> List[FamilyMember]:
    """
    확대 D_ε μ 와 동차가 아닌 두 family 를 합친 목록

    - thin_slab: 질량을 고정한 채 두께 h → 0
    - two_scale: 거친 slab 위에 같은 질량의 폭 f 덩어리, f → 0
    """
    members = [FamilyMember("dilation", eps, mu) for eps, mu in dilation_family(base, dilations, alpha).items()]
    members += [FamilyMember("thin_slab", float(h), thin_slab(float(h))) for h in thicknesses]
    members += [FamilyMember("two_scale", float(f), two_scale(fine=float(f))) for f in fine_scales]
    return members
