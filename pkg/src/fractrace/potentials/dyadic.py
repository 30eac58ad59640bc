"""
α-진 Wolff 퍼텐셜과 dyadic 에너지

P^{d,τ,R}_{αp}μ(t, x) = Σ_{Q ∋ (t, x)} (μ(Q)/l^n)^{p'−1}.
척도마다 점을 담는 입방체는 아래 모서리 규칙 (floor) 으로 정확히 하나이고, 원자의
입방체 배정도 같은 규칙을 쓰므로 Σ_i w_i P^d(atom_i) 와 dyadic 에너지가 정확히 일치합니다.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from fractrace.geometry.cube import DEFAULT_SCALES, cube_index
from fractrace.geometry.measure import DiscreteMeasure

EvalPoint = Tuple[float, Sequence[float] | float]


@dataclass(frozen=True)
class DyadicWolff:
    """
    dyadic Wolff 합

    Attributes:
        value: 척도 범위 안의 합
        terms: 척도별 기여 {m: (μ(Q)/l^n)^{p'−1}}
        tail_bound: 범위 위쪽 척도 (m > m_top) 기여의 상한
        vanishing_scales: μ(Q) = 0 인 척도
    """

    value: float
    terms: Dict[int, float] = field(default_factory=dict)
    tail_bound: float = 0.0
    vanishing_scales: List[int] = field(default_factory=list)


def _shift(mu_dim: int, shift: Optional[Sequence[float]]) -> np.ndarray:
    return np.zeros(1 + mu_dim) if shift is None else np.asarray(shift, dtype=float)


def _atom_indices(mu: DiscreteMeasure, m: int, alpha: float, tau: np.ndarray) -> np.ndarray:
    """척도 m 에서 원자별 입방체 인덱스 (N, 1+n)"""
    l = 2.0**m
    k0 = np.floor((mu.times - tau[0]) / l ** (2.0 * alpha))
    k = np.floor((mu.points - tau[1:]) / l)
    return np.column_stack([k0, k]).astype(np.int64)


def wolff_dyadic(
    mu: DiscreteMeasure,
    p: float,
    eval_point: EvalPoint,
    alpha: float,
    scales: Iterable[int] = DEFAULT_SCALES,
    shift: Optional[Sequence[float]] = None,
) -> DyadicWolff:
    """
    유한 척도 범위의 dyadic Wolff 합

    Args:
        mu: 이산 측도
        p: (1, ∞)
        eval_point: (t, x), t ≥ τ_t
        alpha: 분수 지수
        scales: 명시적 유한 척도 범위
        shift: 이동 τ (기본 0)
    """
    if p <= 1:
        raise ValueError(f"p 는 1 보다 커야 합니다: {p}")
    t, x = eval_point
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    n = x_arr.size
    tau = _shift(n, shift)
    if t < tau[0]:
        raise ValueError(f"점의 시간 {t} 이 이동 τ_t={tau[0]} 보다 이릅니다")
    gamma = 1.0 / (p - 1.0)

    scale_list = sorted(scales)
    terms: Dict[int, float] = {}
    vanishing: List[int] = []
    for m in scale_list:
        k0, k = cube_index(t, x_arr, m, alpha, tau)
        target = np.array((k0,) + k, dtype=np.int64)
        mass = 0.0
        if len(mu):
            mass = float(mu.weights[np.all(_atom_indices(mu, m, alpha, tau) == target, axis=1)].sum())
        if mass > 0:
            terms[m] = (mass / 2.0 ** (m * n)) ** gamma
        else:
            vanishing.append(m)

    tail = 0.0
    if scale_list and mu.total > 0:
        m_top = scale_list[-1]
        ratio = 2.0 ** (-n * gamma)
        tail = mu.total**gamma * 2.0 ** (-(m_top + 1) * n * gamma) / (1.0 - ratio)
    return DyadicWolff(
        value=float(sum(terms.values())),
        terms=terms,
        tail_bound=tail,
        vanishing_scales=vanishing,
    )


def dyadic_energy(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    scales: Iterable[int] = DEFAULT_SCALES,
    shift: Optional[Sequence[float]] = None,
) -> float:
    """Σ_Q (μ(Q)/l^n)^{p'} l^n (척도 범위 안의 모든 입방체)"""
    if p <= 1:
        raise ValueError(f"p 는 1 보다 커야 합니다: {p}")
    if len(mu) == 0:
        return 0.0
    n = mu.dim
    tau = _shift(n, shift)
    p_prime = p / (p - 1.0)
    total = 0.0
    for m in scales:
        l_n = 2.0 ** (m * n)
        _, inverse = np.unique(_atom_indices(mu, m, alpha, tau), axis=0, return_inverse=True)
        masses = np.bincount(inverse.reshape(-1), weights=mu.weights)
        total += float(np.sum((masses / l_n) ** p_prime) * l_n)
    return total


def maximal_dyadic(
    g: np.ndarray,
    mu: DiscreteMeasure,
    query: EvalPoint,
    alpha: float,
    scales: Iterable[int] = DEFAULT_SCALES,
    shift: Optional[Sequence[float]] = None,
) -> float:
    """
    dyadic Hardy–Littlewood 최대함수 sup_{Q ∋ query, μ(Q) > 0} μ(Q)^{-1} Σ_{Q} g w

    Args:
        g: 원자별 비음 값 (N,)
    """
    g = np.asarray(g, dtype=float).reshape(-1)
    if g.size != len(mu):
        raise ValueError(f"g 개수 {g.size} 가 원자 수 {len(mu)} 와 다릅니다")
    if np.any(g < 0):
        raise ValueError("g 는 비음이어야 합니다")
    if len(mu) == 0:
        return 0.0
    t, x = query
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    tau = _shift(x_arr.size, shift)
    best = 0.0
    for m in scales:
        k0, k = cube_index(t, x_arr, m, alpha, tau)
        inside = np.all(_atom_indices(mu, m, alpha, tau) == np.array((k0,) + k), axis=1)
        mass = float(mu.weights[inside].sum())
        if mass > 0:
            best = max(best, float(np.dot(g[inside], mu.weights[inside])) / mass)
    return best
