"""
Hedberg–Wolff 퍼텐셜 (R, S 변형)

P μ(t, x) = ∫_0^ρ (μ(B_r(t, x))/r^β)^{p'−1} dr/r,  β = n (R) 또는 n + 2α(1−p) (S).
이산 측도에서 μ(B_r) 는 스윕 조각마다 상수이므로 조각별 닫힌 적분
c^γ (a^{−βγ} − b^{−βγ})/(βγ), γ = p' − 1 = 1/(p−1) 의 합으로 정확히 계산합니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal, Sequence, Tuple

import numpy as np
from scipy.integrate import quad

from fractrace.geometry.ball import ParabolicBall, containment_intervals
from fractrace.geometry.measure import DiscreteMeasure, measure_of_region
from fractrace.potentials.sweep import SweepPieces, sweep
from fractrace.semigroup.exponents import require_s_regime

logger = logging.getLogger(__name__)

Variant = Literal["R", "S"]
EvalPoint = Tuple[float, Sequence[float] | float]


@dataclass(frozen=True, eq=False)
class WolffProfile:
    """
    Wolff 퍼텐셜 평가 결과

    Attributes:
        eval_point: (t, x)
        pieces: (0, ρ) 분할과 조각별 질량
        value: 조각별 닫힌 적분의 합
        variant: "R" 또는 "S"
        rho: 절단 반경 (∞ 가능)
        exponent: 분모 지수 β
    """

    eval_point: Tuple[float, Tuple[float, ...]]
    pieces: SweepPieces
    value: float
    variant: str
    rho: float
    exponent: float


def denominator_exponent(variant: str, n: int, alpha: float, p: float) -> float:
    """R: n, S: n + 2α(1−p) (S 영역 검사 포함)"""
    if variant == "R":
        return float(n)
    if variant == "S":
        require_s_regime(p, n, alpha)
        return n + 2.0 * alpha * (1.0 - p)
    raise ValueError(f"알 수 없는 변형입니다: {variant}")


def piece_integrals(pieces: SweepPieces, beta: float, gamma: float) -> np.ndarray:
    """조각마다 ∫_a^b (c/r^β)^γ dr/r"""
    a, b, c = pieces.lower, pieces.upper, pieces.masses
    out = np.zeros(len(pieces))
    loaded = c > 0
    if not np.any(loaded):
        return out
    k = beta * gamma
    a_l, b_l = a[loaded], b[loaded]
    # 질량이 있는 조각은 항상 a > 0
    out[loaded] = c[loaded] ** gamma * (a_l ** (-k) - np.where(np.isinf(b_l), 0.0, b_l ** (-k))) / k
    return out


def _wolff(
    mu: DiscreteMeasure,
    p: float,
    eval_point: EvalPoint,
    alpha: float,
    variant: str,
    rho: float,
) -> WolffProfile:
    if p <= 1:
        raise ValueError(f"p 는 1 보다 커야 합니다: {p}")
    if rho <= 0:
        raise ValueError(f"절단 반경은 양수여야 합니다: {rho}")
    t, x = eval_point
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    n = mu.dim if len(mu) else x_arr.size
    beta = denominator_exponent(variant, n, alpha, p)
    gamma = 1.0 / (p - 1.0)

    lo, hi = containment_intervals(mu.times, mu.points, float(t), x_arr, alpha)
    pieces = sweep(lo, hi, mu.weights, rho)
    value = float(np.sum(piece_integrals(pieces, beta, gamma)))
    return WolffProfile(
        eval_point=(float(t), tuple(float(v) for v in x_arr)),
        pieces=pieces,
        value=value,
        variant=variant,
        rho=rho,
        exponent=beta,
    )


def wolff_R(
    mu: DiscreteMeasure,
    p: float,
    eval_point: EvalPoint,
    alpha: float,
    rho: float = math.inf,
) -> WolffProfile:
    """
    P^R_{αp}μ(t, x) (ρ < ∞ 이면 절단 변형 P^R_{αp,ρ})

    Examples:
        δ at (t+1, x), p=2, n=1, α=1/2 → ∫_{1/2}^{1} r^{-2} dr = 1
    """
    return _wolff(mu, p, eval_point, alpha, "R", rho)


def wolff_S(
    mu: DiscreteMeasure,
    p: float,
    eval_point: EvalPoint,
    alpha: float,
    rho: float = math.inf,
) -> WolffProfile:
    """
    P^S_{αp}μ(t, x), 분모 지수 n + 2α(1−p)

    Raises:
        RegimeError: p ≥ 1 + n/(2α)
    """
    return _wolff(mu, p, eval_point, alpha, "S", rho)


def wolff_at_atoms(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    variant: Variant = "R",
    rho: float = math.inf,
) -> np.ndarray:
    """각 원자 위치에서의 Wolff 퍼텐셜 값 (N,)"""
    func = wolff_R if variant == "R" else wolff_S
    values = np.array(
        [func(mu, p, (t, x), alpha, rho).value for t, x in zip(mu.times, mu.points)],
        dtype=float,
    )
    logger.debug("wolff_at_atoms %s: 원자 %d개, 최대 %.3e", variant, len(mu), values.max(initial=0.0))
    return values


def wolff_energy(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    variant: Variant = "R",
    rho: float = math.inf,
) -> float:
    """∫ P μ dμ = Σ_i w_i P μ(t_i, x_i)"""
    if len(mu) == 0:
        return 0.0
    return float(np.dot(mu.weights, wolff_at_atoms(mu, p, alpha, variant, rho)))


def wolff_quadrature(
    mu: DiscreteMeasure,
    p: float,
    eval_point: EvalPoint,
    alpha: float,
    variant: Variant = "R",
) -> float:
    """
    원자별 포함 구간 끝점 사이마다 적응 구적으로 적분한 Wolff 퍼텐셜 (교차 확인용)

    μ(B_r) 는 매 r 에서 공 포함 판정으로 직접 셉니다. 가장 큰 끝점 너머에서는 μ(B_r) = 0 입니다.
    """
    t, x = eval_point
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    if len(mu) == 0:
        return 0.0
    beta = denominator_exponent(variant, mu.dim, alpha, p)
    gamma = 1.0 / (p - 1.0)
    lo, hi = containment_intervals(mu.times, mu.points, float(t), x_arr, alpha)
    nonempty = lo < hi
    if not np.any(nonempty):
        return 0.0
    edges = np.unique(np.concatenate([lo[nonempty], hi[nonempty]]))

    def integrand(r: float) -> float:
        mass = measure_of_region(mu, ParabolicBall(float(t), tuple(x_arr), r, alpha))
        return (mass / r**beta) ** gamma / r

    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        value, _ = quad(integrand, a, b, epsabs=0.0, epsrel=1e-13, limit=200)
        total += value
    return total
