"""
용량 괄호 솔버

이산 문제: min Σ_c v_c h_c^p  s.t.  (T h)_j = Σ_c A_{jc} v_c h_c ≥ 1,  h ≥ 0.

- 주 문제: 라그랑주 쌍대 g(λ) = Σλ − (p−1) Σ_c v_c (a_c/p)^{p'} (a = A^T λ) 를
  L-BFGS-B 로 최대화하고 닫힌 형태 최소화자 h = (a/p)^{1/(p−1)} 를 min_j (T h)_j = 1 이
  되도록 사후 척도 변환합니다.
- 쌍대 문제: 척도 불변 비 Σw / ‖A^T w‖_{p',v} 를 λ* 에서 출발해 최대화하고
  ‖A^T w‖ = 1 로 척도 변환합니다.

실행 가능한 h 와 w 에 대해 (Σw)^p ≤ ‖h‖_p^p 이므로 괄호는 조기 종료와 무관하게 건전합니다.
쌍대값은 주값으로 잘라내지 않습니다. 초과는 duality_violation 으로 드러나고 경고로 남습니다.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Literal, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox, ball_samples
from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.semigroup.exponents import conjugate, require_s_regime

logger = logging.getLogger(__name__)

# 실행 가능한 증인 쌍에서 dual > primal 은 반올림 이상의 초과가 없어야 합니다
DUALITY_RTOL = 1e-8


@dataclass(frozen=True)
class SolverControls:
    """반복 상한과 허용오차"""

    max_iter: int = 500
    tol: float = 1e-10
    feas_tol: float = 1e-6

    @classmethod
    def from_config(cls, config: Any) -> "SolverControls":
        return cls(
            max_iter=int(config.get("capacity.max_iter", 500)),
            tol=float(config.get("capacity.tol", 1e-10)),
            feas_tol=float(config.get("capacity.feas_tol", 1e-6)),
        )


@dataclass(frozen=True)
class GridSettings:
    """X 격자 구성 (grid_mode: scaled | fixed)"""

    cells: int = 96
    time_cells: int = 24
    extent: float = 6.0
    subnodes: int = 2
    mode: Literal["scaled", "fixed"] = "scaled"

    @classmethod
    def from_config(cls, config: Any) -> "GridSettings":
        return cls(
            cells=int(config.get("capacity.grid_cells", 96)),
            time_cells=int(config.get("capacity.time_cells", 24)),
            extent=float(config.get("capacity.extent", 6.0)),
            subnodes=int(config.get("capacity.subnodes", 2)),
            mode=config.get("capacity.grid_mode", "scaled"),
        )

    def grid_for(self, K: CompactSetApprox, variant: Literal["R", "S"], alpha: float) -> CapacityGrid:
        return CapacityGrid.for_set(
            K, variant, alpha, self.cells, self.time_cells, self.extent, self.subnodes
        )


@dataclass(frozen=True)
class CouplingProblem:
    """A (J, C), 셀 부피 v (C,), 지수 p"""

    A: np.ndarray
    vol: np.ndarray
    p: float

    @property
    def p_prime(self) -> float:
        return conjugate(self.p)

    def potential(self, h: np.ndarray) -> np.ndarray:
        """(T h)_j"""
        return self.A @ (self.vol * h)

    def adjoint(self, w: np.ndarray) -> np.ndarray:
        """(T^* w)_c = Σ_j w_j A_{jc}"""
        return self.A.T @ w

    def objective(self, h: np.ndarray) -> float:
        return float(np.sum(self.vol * np.abs(h) ** self.p))

    def dual_norm(self, w: np.ndarray) -> float:
        return float(np.sum(self.vol * self.adjoint(w) ** self.p_prime)) ** (1.0 / self.p_prime)

    def minimizer(self, lam: np.ndarray) -> np.ndarray:
        return (np.maximum(self.adjoint(lam), 0.0) / self.p) ** (1.0 / (self.p - 1.0))

    def lagrangian(self, lam: np.ndarray) -> float:
        a = np.maximum(self.adjoint(lam), 0.0)
        return float(np.sum(lam) - (self.p - 1.0) * np.sum(self.vol * (a / self.p) ** self.p_prime))

    def scaled_start(self, direction: np.ndarray) -> np.ndarray:
        """방향 u 에서 g(s·u) 를 최대화하는 s = (Σu / (p V))^{p−1}"""
        u_sum = float(np.sum(direction))
        v = float(np.sum(self.vol * (self.adjoint(direction) / self.p) ** self.p_prime))
        return direction * (u_sum / (self.p * v)) ** (self.p - 1.0)


@dataclass(frozen=True, eq=False)
class CapacityEstimate:
    """
    용량 괄호

    Attributes:
        primal_value: 상계 ‖h‖_p^p
        dual_value: 하계 ‖μ‖^p (잘라내지 않은 원래 값)
        witness_h: (C,) 비음, min_j (T h)_j ≥ 1 − feas_tol
        witness_mu: K 표본 위의 측도, ‖T^* μ‖_{p'} ≤ 1 + feas_tol
        iterations: 총 반복 수
        converged: 수렴 여부
    """

    primal_value: float
    dual_value: float
    witness_h: np.ndarray
    witness_mu: DiscreteMeasure
    iterations: int
    converged: bool
    primal_residual: float = 0.0
    dual_residual: float = 0.0
    samples: int = 0
    details: dict = field(default_factory=dict)

    @property
    def gap(self) -> float:
        """(primal − dual)/primal"""
        if self.primal_value == 0:
            return 0.0
        return (self.primal_value - self.dual_value) / self.primal_value

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.primal_value + self.dual_value)

    @property
    def duality_violation(self) -> bool:
        """쌍대값이 주값을 DUALITY_RTOL 넘게 초과하면 True (솔버 결함 신호)"""
        return self.dual_value > self.primal_value * (1.0 + DUALITY_RTOL)

    @classmethod
    def empty(cls, size: int = 0, dim: int = 1) -> "CapacityEstimate":
        """빈 집합의 용량 0"""
        return cls(0.0, 0.0, np.zeros(size), DiscreteMeasure.zero(dim), 0, True)


@dataclass(frozen=True)
class PrimalResult:
    value: float
    h: np.ndarray
    lam: np.ndarray
    iterations: int
    converged: bool
    residual: float


@dataclass(frozen=True)
class DualResult:
    value: float
    weights: np.ndarray
    iterations: int
    converged: bool
    residual: float


def _post_scale(problem: CouplingProblem, h: np.ndarray) -> Optional[np.ndarray]:
    low = float(np.min(problem.potential(h)))
    if not low > 0 or not math.isfinite(low):
        return None
    return h / low


def solve_primal(
    problem: CouplingProblem,
    controls: SolverControls = SolverControls(),
    candidates: Sequence[np.ndarray] = (),
) -> PrimalResult:
    """
    라그랑주 쌍대 상승 + 닫힌 형태 내부 최소화, 사후 척도 변환

    candidates 의 각 h 도 척도 변환 후 목적값을 비교합니다.
    """
    J = problem.A.shape[0]
    lam0 = problem.scaled_start(np.ones(J))
    scale = float(np.mean(lam0))

    def negative(z: np.ndarray) -> tuple[float, np.ndarray]:
        lam = z * scale
        h = problem.minimizer(lam)
        value = problem.lagrangian(lam)
        grad = 1.0 - problem.potential(h)
        return -value / scale, -grad

    result = minimize(
        negative,
        lam0 / scale,
        jac=True,
        method="L-BFGS-B",
        bounds=[(0.0, None)] * J,
        options={"maxiter": controls.max_iter, "ftol": controls.tol, "gtol": controls.tol},
    )
    lam = np.maximum(result.x, 0.0) * scale
    best_h = _post_scale(problem, problem.minimizer(lam))
    if best_h is None:
        best_h = _post_scale(problem, problem.minimizer(lam0))
    best = problem.objective(best_h) if best_h is not None else math.inf

    for h in candidates:
        scaled = _post_scale(problem, np.maximum(np.asarray(h, dtype=float), 0.0))
        if scaled is not None and problem.objective(scaled) < best:
            best_h, best = scaled, problem.objective(scaled)

    assert best_h is not None
    residual = max(0.0, 1.0 - float(np.min(problem.potential(best_h))))
    return PrimalResult(
        value=best,
        h=best_h,
        lam=lam,
        iterations=int(result.nit),
        converged=bool(result.success),
        residual=residual,
    )


def _ratio_value(problem: CouplingProblem, w: np.ndarray) -> float:
    total = float(np.sum(w))
    norm = problem.dual_norm(w)
    if total <= 0 or norm <= 0:
        return 0.0
    return (total / norm) ** problem.p


def solve_dual(
    problem: CouplingProblem,
    controls: SolverControls = SolverControls(),
    warm_start: Optional[np.ndarray] = None,
) -> DualResult:
    """척도 불변 비 log Σw − log ‖A^T w‖_{p',v} 의 사영 준뉴턴 상승"""
    J = problem.A.shape[0]
    w0 = np.ones(J) if warm_start is None or not np.any(warm_start > 0) else np.maximum(warm_start, 0.0)
    w0 = w0 / np.sum(w0)
    pp = problem.p_prime

    def negative(w: np.ndarray) -> tuple[float, np.ndarray]:
        total = float(np.sum(w))
        a = problem.adjoint(w)
        energy = float(np.sum(problem.vol * a**pp))
        if total <= 0 or energy <= 0:
            return math.inf, np.zeros_like(w)
        value = math.log(total) - math.log(energy) / pp
        grad = 1.0 / total - problem.A @ (problem.vol * a ** (pp - 1.0)) / energy
        return -value, -grad

    result = minimize(
        negative,
        w0,
        jac=True,
        method="L-BFGS-B",
        bounds=[(0.0, None)] * J,
        options={"maxiter": controls.max_iter, "ftol": controls.tol, "gtol": controls.tol},
    )
    w = np.maximum(result.x, 0.0)
    if _ratio_value(problem, w) < _ratio_value(problem, w0):
        w = w0
    norm = problem.dual_norm(w)
    w = w / norm
    residual = max(0.0, problem.dual_norm(w) - 1.0)
    return DualResult(
        value=float(np.sum(w)) ** problem.p,
        weights=w,
        iterations=int(result.nit),
        converged=bool(result.success),
        residual=residual,
    )


def build_problem(
    variant: Literal["R", "S"],
    K: CompactSetApprox,
    p: float,
    alpha: float,
    grid: CapacityGrid,
) -> CouplingProblem:
    if p <= 1:
        raise ValueError(f"p 는 1 보다 커야 합니다: {p}")
    if variant == "S":
        require_s_regime(p, K.dim, alpha)
    if grid.variant != variant:
        raise ValueError(f"격자 변형 {grid.variant} 이 요청 변형 {variant} 과 다릅니다")
    return CouplingProblem(A=grid.coupling(K, alpha), vol=grid.volumes(), p=p)


def _witness_measure(K: CompactSetApprox, weights: np.ndarray) -> DiscreteMeasure:
    return DiscreteMeasure(K.times, K.points, weights)


def _reported(estimate: CapacityEstimate) -> CapacityEstimate:
    if estimate.duality_violation:
        logger.warning(
            "약한 쌍대성 위반: dual=%.6e > primal=%.6e (J=%d)",
            estimate.dual_value, estimate.primal_value, estimate.samples,
        )
    return estimate


def capacity_primal(
    variant: Literal["R", "S"],
    K: CompactSetApprox,
    p: float,
    alpha: float,
    grid: CapacityGrid,
    controls: SolverControls = SolverControls(),
    candidates: Sequence[np.ndarray] = (),
    problem: Optional[CouplingProblem] = None,
) -> CapacityEstimate:
    """
    주 문제 상계. 하계는 λ* 를 쌍대 증인으로 쓴 비 값입니다.

    Raises:
        RegimeError: S 변형에서 p ≥ 1 + n/(2α)
        InfeasibleCapacityError: 결합 행이 전부 0 인 표본
    """
    problem = problem or build_problem(variant, K, p, alpha, grid)
    primal = solve_primal(problem, controls, candidates)
    lam = primal.lam if np.any(primal.lam > 0) else np.ones(len(K))
    w = lam / problem.dual_norm(lam)
    dual_value = float(np.sum(w)) ** p
    logger.debug(
        "capacity_primal %s p=%g α=%g J=%d: primal=%.6e dual=%.6e (%d회)",
        variant, p, alpha, len(K), primal.value, dual_value, primal.iterations,
    )
    return _reported(CapacityEstimate(
        primal_value=primal.value,
        dual_value=dual_value,
        witness_h=primal.h,
        witness_mu=_witness_measure(K, w),
        iterations=primal.iterations,
        converged=primal.converged,
        primal_residual=primal.residual,
        dual_residual=max(0.0, problem.dual_norm(w) - 1.0),
        samples=len(K),
    ))


def capacity_dual(
    variant: Literal["R", "S"],
    K: CompactSetApprox,
    p: float,
    alpha: float,
    grid: CapacityGrid,
    controls: SolverControls = SolverControls(),
    candidates: Sequence[np.ndarray] = (),
    problem: Optional[CouplingProblem] = None,
) -> CapacityEstimate:
    """
    주 문제로 λ* 를 구한 뒤 쌍대 비를 상승시켜 전체 괄호를 반환합니다.
    """
    problem = problem or build_problem(variant, K, p, alpha, grid)
    primal = solve_primal(problem, controls, candidates)
    dual = solve_dual(problem, controls, warm_start=primal.lam)
    dual_value = dual.value
    logger.debug(
        "capacity_dual %s p=%g α=%g J=%d: primal=%.6e dual=%.6e gap=%.2e",
        variant, p, alpha, len(K), primal.value, dual_value,
        (primal.value - dual_value) / primal.value if primal.value else 0.0,
    )
    return _reported(CapacityEstimate(
        primal_value=primal.value,
        dual_value=dual_value,
        witness_h=primal.h,
        witness_mu=_witness_measure(K, dual.weights),
        iterations=primal.iterations + dual.iterations,
        converged=primal.converged and dual.converged,
        primal_residual=primal.residual,
        dual_residual=dual.residual,
        samples=len(K),
    ))


def ball_capacity(
    variant: Literal["R", "S"],
    r: float,
    p: float,
    alpha: float,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
    time_samples: int = 16,
    space_samples: int = 32,
    t0: float = 0.0,
    fixed_grid: Optional[CapacityGrid] = None,
) -> CapacityEstimate:
    """
    B_r(t0, 0) 의 용량 괄호 (n = 1)

    scaled 모드는 격자가 (r^{2α}, r) 로 함께 척도 변환되고, fixed 모드는 fixed_grid 를 씁니다.
    """
    K = ball_samples(ParabolicBall(t0, (0.0,), r, alpha), time_samples, space_samples)
    if settings.mode == "fixed":
        if fixed_grid is None:
            raise ValueError("fixed 모드에는 fixed_grid 가 필요합니다")
        grid = fixed_grid
    else:
        grid = settings.grid_for(K, variant, alpha)
    return capacity_dual(variant, K, p, alpha, grid, controls)
