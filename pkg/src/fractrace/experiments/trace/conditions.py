"""
추적 부등식의 영역별 조건값

- p < q: 공 조건 sup μ(B_r)/r^{βq/p}
- p = q: 콤팩트 조건 sup_K μ(K)/C(K)^{q/p}. K 는 용량 솔버의 후보군
  (무거운 원자 접두, Wolff 순서 접두, 공 조건 상위 격자 공) 이고 모두 한 격자에서 풉니다.
- p > q: Wolff 적분 Σ_i w_i (P μ(atom_i))^{q(p−1)/(p−q)}

β = n (R) 또는 n + 2α(1−p) (S). 공 격자는 μ 의 기하에서 만들어지므로 포물 확대와 함께
정확히 척도 변환됩니다. R 변형 격자는 t0 = 0 에 고정합니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np

from fractrace.capacity.sets import CompactSetApprox, atoms_set, ball_samples, bounding_scale
from fractrace.capacity.solver import GridSettings, SolverControls, capacity_primal
from fractrace.capacity.threshold import mass_threshold_capacity, prefix_masks
from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import DiscreteMeasure, measure_of_region
from fractrace.potentials.wolff import denominator_exponent, wolff_at_atoms
from fractrace.semigroup.exponents import ExponentConfig, regime

logger = logging.getLogger(__name__)

LATTICE_LEVELS = 8
COMPACT_PREFIXES = 6
COMPACT_BALLS = 4
BALL_SAMPLES = (8, 16)


@dataclass(frozen=True)
class ConditionValues:
    """
    Attributes:
        ball_sup: 공 조건 상한 (격자 위)
        compact_sup: 콤팩트 조건 상한 (후보군 위, C(K) 주값 사용)
        wolff_integral: p ≠ q 일 때 Wolff 적분, p = q 면 None
        compact_best: compact_sup 를 준 후보 이름
        compact_candidates: 풀어 본 후보 집합 수
        lattice_size: 조사한 공 수
    """

    ball_sup: float
    compact_sup: float
    wolff_integral: Optional[float]
    compact_best: str
    compact_candidates: int
    lattice_size: int


def ball_lattice(mu: DiscreteMeasure, alpha: float, variant: str) -> List[ParabolicBall]:
    """
    μ 에서 만든 (r, t0, x0) 격자

    r = scale·2^{-k} (k < LATTICE_LEVELS), x0 ∈ 원자 위치, t0 = 0 (R) 또는
    {0} ∪ {s_i − 1.5 r^{2α} ≥ 0} (S).
    """
    if len(mu) == 0:
        return []
    _, scale = bounding_scale(atoms_set(mu), alpha)
    centers = np.unique(mu.points, axis=0)
    balls = []
    for k in range(LATTICE_LEVELS):
        r = scale * 2.0 ** (-k)
        if variant == "R":
            t0s = [0.0]
        else:
            shifted = mu.times - 1.5 * r ** (2.0 * alpha)
            t0s = [0.0] + sorted({float(v) for v in shifted if v >= 0})
        for t0 in t0s:
            for x0 in centers:
                balls.append(ParabolicBall(t0, tuple(x0), r, alpha))
    return balls


def wolff_integral(
    mu: DiscreteMeasure,
    p: float,
    q: float,
    alpha: float,
    variant: Literal["R", "S"] = "R",
) -> float:
    """
    Σ_i w_i (P μ(atom_i))^{q(p−1)/(p−q)}

    Raises:
        RegimeError: p = q (지수 특이)
    """
    ExponentConfig(p, q).require_distinct()
    if len(mu) == 0:
        return 0.0
    exponent = q * (p - 1.0) / (p - q)
    potentials = wolff_at_atoms(mu, p, alpha, variant)
    loaded = mu.weights > 0
    with np.errstate(divide="ignore"):
        terms = np.power(potentials[loaded], exponent)
    return float(np.sum(mu.weights[loaded] * terms))


def compact_candidates(
    mu: DiscreteMeasure,
    p: float,
    alpha: float,
    variant: Literal["R", "S"],
    balls: Sequence[ParabolicBall],
    ball_scores: np.ndarray,
    max_balls: int = COMPACT_BALLS,
) -> List[Tuple[str, CompactSetApprox, float]]:
    """
    (이름, K, μ(K)) 후보 목록

    원자 접두 길이는 1 부터 원자 수까지 기하 간격이고, 공은 ball_scores 가 큰 순서로 담는
    원자 집합이 다른 것만 max_balls 개까지 고릅니다. 공 후보는 표본 위에 담긴 원자를 더합니다.
    """
    if len(mu) == 0:
        return []
    lengths = sorted({int(round(v)) for v in np.geomspace(1, len(mu), COMPACT_PREFIXES)})
    found: List[Tuple[str, CompactSetApprox, float]] = [
        (label, atoms_set(mu, mask), float(mu.weights[mask].sum()))
        for label, mask in prefix_masks(mu, p, alpha, variant, lengths)
    ]
    seen = set()
    for i in np.argsort(-ball_scores, kind="stable"):
        if len(seen) >= max_balls or not ball_scores[i] > 0:
            break
        ball = balls[int(i)]
        inside = ball.contains_points(mu.times, mu.points)
        key = tuple(np.nonzero(inside)[0])
        if key in seen:
            continue
        seen.add(key)
        K = ball_samples(ball, *BALL_SAMPLES).union(atoms_set(mu, inside))
        label = f"ball(r={ball.r:.4g},t0={ball.t0:.4g},x0={ball.x0[0]:.4g})"
        found.append((label, K, float(mu.weights[inside].sum())))
    return found


def compact_condition(
    variant: Literal["R", "S"],
    candidates: Sequence[Tuple[str, CompactSetApprox, float]],
    p: float,
    q: float,
    alpha: float,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
) -> Tuple[float, str]:
    """
    max_K μ(K)/C(K)^{q/p} 와 최대를 준 후보 이름

    C(K) 는 모든 후보의 합집합에 맞춘 한 격자 위의 주값 (상계) 이므로 각 항은 하계입니다.
    """
    if not candidates:
        return 0.0, ""
    union = candidates[0][1]
    for _, K, _ in candidates[1:]:
        union = union.union(K)
    grid = settings.grid_for(union, variant, alpha)

    best, best_label = 0.0, ""
    for label, K, mass in candidates:
        estimate = capacity_primal(variant, K, p, alpha, grid, controls)
        value = mass / estimate.primal_value ** (q / p)
        logger.debug("compact %s: μ(K)=%.4e C(K)≤%.4e → %.4e", label, mass, estimate.primal_value, value)
        if value > best:
            best, best_label = value, label
    return best, best_label


def condition_values(
    variant: Literal["R", "S"],
    mu: DiscreteMeasure,
    p: float,
    q: float,
    alpha: float,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
    with_compact: bool = True,
) -> ConditionValues:
    """
    세 조건값을 한 번에 계산합니다.

    Raises:
        RegimeError: S 변형에서 p ≥ 1 + n/(2α)
    """
    n = mu.dim if len(mu) else 1
    beta = denominator_exponent(variant, n, alpha, p)
    balls = ball_lattice(mu, alpha, variant)
    masses = np.array([measure_of_region(mu, b) for b in balls])
    radii = np.array([b.r for b in balls])

    ball_sup = float(np.max(masses / radii ** (beta * q / p))) if balls else 0.0
    compact_sup, best, count = math.nan, "", 0
    if with_compact:
        # C(B_r) ~ r^β 이므로 μ(B)/r^β 가 큰 공부터 후보로
        scores = masses / radii**beta if balls else np.zeros(0)
        candidates = compact_candidates(mu, p, alpha, variant, balls, scores)
        compact_sup, best = compact_condition(variant, candidates, p, q, alpha, settings, controls)
        count = len(candidates)

    wolff_value = None if regime(p, q) == "p=q" else wolff_integral(mu, p, q, alpha, variant)
    logger.debug(
        "conditions %s p=%g q=%g: ball=%.4e compact=%.4e (%s) wolff=%s",
        variant, p, q, ball_sup, compact_sup, best, wolff_value,
    )
    return ConditionValues(
        ball_sup=ball_sup,
        compact_sup=compact_sup,
        wolff_integral=wolff_value,
        compact_best=best,
        compact_candidates=count,
        lattice_size=len(balls),
    )


def regime_condition(values: ConditionValues, p: float, q: float) -> float:
    """영역에 맞는 조건값 하나"""
    kind = regime(p, q)
    if kind == "p<q":
        return values.ball_sup
    if kind == "p=q":
        return values.compact_sup
    assert values.wolff_integral is not None
    return values.wolff_integral


@dataclass(frozen=True)
class ThresholdConditions:
    """λ 사다리 위의 조건값 괄호"""

    levels: List[float]
    capacity_lower: List[float]
    capacity_upper: List[float]
    value_lower: float
    value_upper: float


def threshold_conditions(
    mu: DiscreteMeasure,
    p: float,
    q: float,
    alpha: float,
    variant: Literal["R", "S"] = "R",
    levels: int = 4,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
) -> ThresholdConditions:
    """
    C(μ; λ) 형태 조건을 λ_k = 2^{-k}‖μ‖ 에서 휴리스틱 괄호로 평가합니다.

    p < q: sup λ^{p/q}/C, p = q: sup λ/C, p > q: Σ_k (λ_k^{p/q}/C_k)^{q/(p−q)} ln 2.
    """
    lams = [mu.total * 2.0 ** (-k) for k in range(levels)]
    lower, upper = [], []
    for lam in lams:
        bracket = mass_threshold_capacity(mu, lam, variant, p, alpha, settings, controls)
        lower.append(bracket.lower)
        upper.append(bracket.upper)

    lam_arr = np.array(lams)
    c_lo, c_hi = np.array(lower), np.array(upper)

    def evaluate(caps: np.ndarray) -> float:
        ratio = lam_arr ** (p / q) / caps
        if regime(p, q) == "p>q":
            return float(np.sum(ratio ** (q / (p - q))) * math.log(2.0))
        return float(np.max(ratio))

    # 용량 상계가 조건의 하계를 준다
    return ThresholdConditions(
        levels=lams,
        capacity_lower=lower,
        capacity_upper=upper,
        value_lower=evaluate(c_hi),
        value_upper=evaluate(np.maximum(c_lo, np.finfo(float).tiny)),
    )
