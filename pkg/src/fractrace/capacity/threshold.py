"""
질량 임계 용량 C(μ; λ) = inf{C(K) : μ(K) ≥ λ} 의 휴리스틱 괄호

참 하한은 모든 콤팩트 집합에 대한 하한이라 계산할 수 없으므로, 선언된 후보군
(무거운 원자 접두, Wolff 순서 접두, 격자 포물 공) 위에서만 하한을 취합니다.
모든 후보는 같은 X 격자에서 풀어 서로 비교할 수 있게 합니다.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from fractrace.capacity.sets import CompactSetApprox, atoms_set, ball_samples, bounding_scale
from fractrace.capacity.solver import GridSettings, SolverControls, capacity_dual
from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import DiscreteMeasure, measure_of_region
from fractrace.potentials.wolff import wolff_at_atoms

logger = logging.getLogger(__name__)

MASS_RTOL = 1e-12


@dataclass(frozen=True)
class BallLattice:
    """공 후보 격자 (r, t0, x0). 비어 있으면 μ 에서 기본 격자를 만듭니다."""

    radii: Tuple[float, ...] = ()
    t0s: Tuple[float, ...] = ()
    x0s: Tuple[float, ...] = ()
    max_balls: int = 4
    time_samples: int = 8
    space_samples: int = 16


@dataclass(frozen=True)
class CandidateResult:
    label: str
    mass: float
    primal: float
    dual: float
    samples: int


@dataclass(frozen=True)
class ThresholdBracket:
    """
    Attributes:
        lower: 후보군 쌍대값의 최소
        upper: 후보군 주값의 최소
        best: upper 를 준 후보 이름
        candidates: 후보별 결과
        heuristic: 항상 True (후보군 위의 괄호이지 참 하한이 아님)
    """

    lower: float
    upper: float
    best: str
    candidates: List[CandidateResult] = field(default_factory=list)
    heuristic: bool = True


def _prefix(order: np.ndarray, weights: np.ndarray, lam: float) -> np.ndarray:
    """order 순서로 질량이 λ 에 도달하는 가장 짧은 접두 마스크"""
    cumulative = np.cumsum(weights[order])
    k = int(np.searchsorted(cumulative, lam * (1.0 - MASS_RTOL))) + 1
    mask = np.zeros(weights.size, dtype=bool)
    mask[order[: min(k, weights.size)]] = True
    return mask


def default_lattice(mu: DiscreteMeasure, alpha: float, variant: str) -> BallLattice:
    """지지집합 척도의 2^{-k} 반경, 원자 위치 중심, R 은 t0 = 0"""
    _, scale = bounding_scale(atoms_set(mu), alpha)
    radii = tuple(scale * 2.0 ** (-k) for k in range(6))
    x0s = tuple(float(v) for v in np.unique(mu.points[:, 0]))
    if variant == "R":
        t0s: Tuple[float, ...] = (0.0,)
    else:
        t0s = (0.0,) + tuple(float(v) for v in np.unique(mu.times * 0.5))
    return BallLattice(radii=radii, t0s=t0s, x0s=x0s)


def _ball_candidates(
    mu: DiscreteMeasure,
    lam: float,
    alpha: float,
    lattice: BallLattice,
) -> List[Tuple[str, CompactSetApprox]]:
    found: List[Tuple[float, str, CompactSetApprox]] = []
    seen = set()
    for r in sorted(lattice.radii):
        for t0 in lattice.t0s:
            for x0 in lattice.x0s:
                ball = ParabolicBall(t0, (x0,), r, alpha)
                inside = ball.contains_points(mu.times, mu.points)
                key = tuple(np.nonzero(inside)[0])
                if measure_of_region(mu, ball) < lam * (1.0 - MASS_RTOL) or key in seen:
                    continue
                seen.add(key)
                K = ball_samples(ball, lattice.time_samples, lattice.space_samples).union(
                    atoms_set(mu, inside)
                )
                found.append((r, f"ball(r={r:.4g},t0={t0:.4g},x0={x0:.4g})", K))
    found.sort(key=lambda item: item[0])
    return [(label, K) for _, label, K in found[: lattice.max_balls]]


def mass_threshold_capacity(
    mu: DiscreteMeasure,
    lam: float,
    variant: Literal["R", "S"],
    p: float,
    alpha: float,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
    lattice: Optional[BallLattice] = None,
    families: Sequence[str] = ("heaviest", "wolff", "ball"),
) -> ThresholdBracket:
    """
    후보군 위의 [min 쌍대, min 주] 괄호

    Raises:
        ValueError: λ ≤ 0 또는 λ > ‖μ‖
    """
    if lam <= 0:
        raise ValueError(f"λ 는 양수여야 합니다: {lam}")
    if lam > mu.total * (1.0 + MASS_RTOL):
        raise ValueError(f"λ={lam:g} 가 전체 질량 ‖μ‖={mu.total:g} 보다 큽니다")
    if mu.dim != 1:
        raise ValueError("용량 계산은 n = 1 만 지원합니다")

    candidates: List[Tuple[str, CompactSetApprox]] = []
    if "heaviest" in families:
        order = np.argsort(-mu.weights, kind="stable")
        candidates.append(("heaviest", atoms_set(mu, _prefix(order, mu.weights, lam))))
    if "wolff" in families:
        order = np.argsort(-wolff_at_atoms(mu, p, alpha, variant), kind="stable")
        candidates.append(("wolff", atoms_set(mu, _prefix(order, mu.weights, lam))))
    if "ball" in families:
        candidates.extend(_ball_candidates(mu, lam, alpha, lattice or default_lattice(mu, alpha, variant)))

    union = candidates[0][1]
    for _, K in candidates[1:]:
        union = union.union(K)
    grid = settings.grid_for(union, variant, alpha)

    results: List[CandidateResult] = []
    for label, K in candidates:
        estimate = capacity_dual(variant, K, p, alpha, grid, controls)
        mass = float(mu.weights[K.contains_atoms(mu)].sum())
        results.append(CandidateResult(label, mass, estimate.primal_value, estimate.dual_value, len(K)))

    best = min(results, key=lambda c: c.primal)
    logger.debug("mass_threshold λ=%g: 후보 %d개, 최선 %s", lam, len(results), best.label)
    return ThresholdBracket(
        lower=min(c.dual for c in results),
        upper=best.primal,
        best=best.label,
        candidates=results,
    )


def prefix_masks(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    variant: Literal["R", "S"],
    lengths: Sequence[int],
) -> List[Tuple[str, np.ndarray]]:
    """
    무거운 원자 순서와 Wolff 퍼텐셜 순서의 길이별 접두 마스크

    원자 집합이 같은 접두는 처음 나온 것 하나만 남깁니다.
    """
    orders = {
        "heaviest": np.argsort(-mu.weights, kind="stable"),
        "wolff": np.argsort(-wolff_at_atoms(mu, p, alpha, variant), kind="stable"),
    }
    seen = set()
    masks: List[Tuple[str, np.ndarray]] = []
    for name, order in orders.items():
        for k in lengths:
            head = order[: min(int(k), len(mu))]
            key = frozenset(head.tolist())
            if not key or key in seen:
                continue
            seen.add(key)
            mask = np.zeros(len(mu), dtype=bool)
            mask[head] = True
            masks.append((f"{name}[{len(head)}]", mask))
    return masks
