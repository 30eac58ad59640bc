"""
추적 부등식 실험

(Σ_i w_i |T h(t_i, x_i)|^q)^{1/q} / ‖h‖_p 를 시행 함수 family 위에서 재어 추적 상수의
경험적 하계를 구합니다. T h 는 원자에서 커널 구적으로 직접 계산합니다.

- R: R h(t_i, x_i) = Σ_c K_{t_i}(x_i − y_c) h_c h^n
- S: S h(t_i, x_i) = Σ_{m ≥ 1} Σ_c K_{t_i − s_m}(x_i − y_c) h_{m,c} dt h^n (우측 리만 합)

격자와 시행 함수는 μ 의 기하에서 정규화 좌표로 만들어지므로 포물 확대 D_ε 에 대해
이산화 전체가 정확히 공변합니다.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Literal, Optional, Sequence

import numpy as np

from fractrace.capacity.sets import atoms_set, bounding_scale
from fractrace.capacity.solver import GridSettings, SolverControls
from fractrace.experiments.families import FamilyMember
from fractrace.experiments.fitting import rank_correlation
from fractrace.experiments.trace.conditions import ConditionValues, condition_values, regime_condition
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.profile import get_profile
from fractrace.kernel.spec import KernelSpec
from fractrace.semigroup.exponents import conjugate, regime, require_s_regime
from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid, TimeAxis
from fractrace.semigroup.norms import cell_weights, norm_lq_mu
from fractrace.semigroup.operators import apply_R

logger = logging.getLogger(__name__)

POWER_STEPS = 12
SPECTRAL_RTOL = 0.05
SPECTRAL_PADDING = 4


@dataclass(frozen=True)
class TraceDomain:
    """시행 함수의 정의역 격자 (R: 공간, S: 시공간)"""

    variant: str
    grid: SpatialGrid
    time: Optional[TimeAxis] = None

    @classmethod
    def for_measure(
        cls,
        mu: DiscreteMeasure,
        alpha: float,
        variant: Literal["R", "S"],
        cells: int = 128,
        time_cells: int = 48,
        extent: float = 4.0,
    ) -> "TraceDomain":
        """
        반폭 L = max|x_i| + extent·scale, 간격 2L/cells, S 는 [0, max t_i] 를 time_cells 로
        """
        if cells % 2:
            raise ValueError(f"cells 는 짝수여야 합니다: {cells}")
        if len(mu) == 0:
            reach, horizon, dim = extent, 1.0, 1
        else:
            _, scale = bounding_scale(atoms_set(mu), alpha)
            reach = float(np.max(np.abs(mu.points))) + extent * scale
            horizon, dim = float(np.max(mu.times)), mu.dim
        grid = SpatialGrid(reach, 2.0 * reach / cells, dim)
        time = TimeAxis(horizon, time_cells) if variant == "S" else None
        return cls(variant, grid, time)

    @property
    def shape(self) -> tuple:
        if self.time is None:
            return self.grid.shape
        return (self.time.steps + 1,) + self.grid.shape

    def as_field(self, values: np.ndarray) -> SpatialField | SpaceTimeField:
        if self.time is None:
            return SpatialField(self.grid, values.reshape(self.shape))
        return SpaceTimeField(self.grid, self.time, values.reshape(self.shape))

    def weights(self) -> np.ndarray:
        """셀 부피 (평탄화)"""
        return cell_weights(self.as_field(np.zeros(self.shape))).ravel()

    def normalized_mesh(self) -> List[np.ndarray]:
        """[s,] u_1, ..., u_n 정규화 좌표 (평탄화). s = t/T ∈ [0, 1], u = x/L ∈ [−1, 1)."""
        axes = [self.grid.axis() / self.grid.half_width] * self.grid.dim
        if self.time is not None:
            axes = [self.time.nodes() / self.time.horizon] + axes
        return [c.ravel() for c in np.meshgrid(*axes, indexing="ij")]


def trace_matrix(mu: DiscreteMeasure, domain: TraceDomain, alpha: float) -> np.ndarray:
    """(atoms, cells) 행렬. 셀 부피가 포함되어 T h = matrix @ h.ravel()."""
    cells = int(np.prod(domain.shape))
    if len(mu) == 0:
        return np.zeros((0, cells))
    profile = get_profile(KernelSpec(alpha, domain.grid.dim))
    nodes = domain.grid.points()
    volume = domain.weights()
    rows = []
    for t_i, x_i in zip(mu.times, mu.points):
        dist = np.linalg.norm(nodes - x_i, axis=1)
        if domain.time is None:
            kernel = profile(np.full(dist.size, t_i), dist)
        else:
            gaps = t_i - domain.time.nodes()
            kernel = profile(gaps[:, None], dist[None, :]).ravel()
        rows.append(kernel * volume)
    return np.vstack(rows)


@dataclass(frozen=True)
class TrialRatio:
    label: str
    lhs: float
    rhs: float
    ratio: float


def _bump(center: np.ndarray, width: np.ndarray, coords: List[np.ndarray]) -> np.ndarray:
    """곱 가우시안 exp(−Σ((u − c)/w)²/2)"""
    exponent = np.zeros_like(coords[0])
    for u, c, w in zip(coords, center, width):
        exponent += ((u - c) / w) ** 2
    return np.exp(-0.5 * exponent)


def trial_family(
    mu: DiscreteMeasure,
    domain: TraceDomain,
    matrix: np.ndarray,
    p: float,
    q: float,
    trials: int,
    seed: int,
) -> Dict[str, np.ndarray]:
    """
    시행 함수 (평탄화 값)

    - random_k: 난수 가우시안 세 개의 합 (비음)
    - bump_k: 원자 위치에 놓은 단일 가우시안, 폭은 2^{-j} 사다리
    - adjoint: (T^* μ)^{p'−1}
    - power: 비선형 거듭제곱 반복 h ← (T^*(w·(T h)^{q−1}))^{p'−1}
    """
    rng = np.random.default_rng(seed)
    coords = domain.normalized_mesh()
    dims = len(coords)
    family: Dict[str, np.ndarray] = {}

    random_count = max(trials // 2, 1)
    for k in range(random_count):
        values = np.zeros_like(coords[0])
        for _ in range(3):
            center = rng.uniform(-0.6, 0.6, size=dims)
            if domain.time is not None:
                center[0] = rng.uniform(0.1, 0.9)
            width = rng.uniform(0.05, 0.3, size=dims)
            values += rng.uniform(0.2, 1.0) * _bump(center, width, coords)
        family[f"random_{k}"] = values

    if len(mu):
        atom_coords = mu.points / domain.grid.half_width
        if domain.time is not None:
            atom_coords = np.column_stack([mu.times / domain.time.horizon, atom_coords])
        for k in range(max(trials - random_count, 0)):
            center = atom_coords[rng.integers(len(mu))].copy()
            if domain.time is not None:
                center[0] *= rng.uniform(0.3, 0.9)
            width = np.full(dims, 2.0 ** (-(k % 5) - 1))
            family[f"bump_{k}"] = _bump(center, width, coords)

        volume = domain.weights()
        safe = np.where(volume > 0, volume, 1.0)
        p_prime = conjugate(p)
        adjoint = np.where(volume > 0, matrix.T @ mu.weights / safe, 0.0)
        family["adjoint"] = adjoint ** (p_prime - 1.0)

        h = family["adjoint"]
        for _ in range(POWER_STEPS):
            image = matrix @ h
            scale = float(np.max(image)) if image.size else 0.0
            if scale == 0.0:
                break
            weighted = mu.weights * (image / scale) ** (q - 1.0)
            h = np.where(volume > 0, matrix.T @ weighted / safe, 0.0) ** (p_prime - 1.0)
        family["power"] = h
    return family


def evaluate_trial(
    label: str,
    values: np.ndarray,
    matrix: np.ndarray,
    mu: DiscreteMeasure,
    domain: TraceDomain,
    p: float,
    q: float,
) -> TrialRatio:
    rhs = float(np.sum(np.abs(values) ** p * domain.weights())) ** (1.0 / p)
    lhs = norm_lq_mu(matrix @ values, mu, q) if len(mu) else 0.0
    ratio = lhs / rhs if rhs > 0 else 0.0
    return TrialRatio(label, lhs, rhs, ratio)


def spectral_trace(values: np.ndarray, domain: TraceDomain, mu: DiscreteMeasure, alpha: float) -> np.ndarray:
    """
    R h(t_i, x_i) 를 apply_R 로 계산합니다 (trace_matrix 직접 구적의 교차 검증).

    h 를 반폭 SPECTRAL_PADDING·L 상자 가운데에 0 으로 채워 넣고 원자 위치에서 삼각 보간합니다.
    채운 상자에서는 지지집합이 안쪽 절반에 있고 주기 상의 기여가 작습니다.
    """
    if domain.time is not None:
        raise ValueError("spectral_trace 는 R 변형 정의역만 받습니다")
    grid = domain.grid
    padded = SpatialGrid(SPECTRAL_PADDING * grid.half_width, grid.spacing, grid.dim)
    n = grid.nodes_per_axis
    start = (SPECTRAL_PADDING - 1) * n // 2
    embedded = np.zeros(padded.shape)
    embedded[tuple(slice(start, start + n) for _ in range(grid.dim))] = values.reshape(grid.shape)
    f = SpatialField(padded, embedded)
    spec = KernelSpec(alpha, grid.dim)
    xi = 2.0 * np.pi * np.fft.fftfreq(padded.nodes_per_axis, d=padded.spacing)

    out = np.zeros(len(mu))
    for t in np.unique(mu.times):
        coeffs = np.fft.fftn(apply_R(f, float(t), spec).values) / padded.nodes_per_axis**grid.dim
        for i in np.nonzero(mu.times == t)[0]:
            value = coeffs
            for d in range(grid.dim):
                phase = np.exp(1j * xi * (mu.points[i, d] + padded.half_width))
                value = np.tensordot(phase, value, axes=([0], [0]))
            out[i] = float(np.real(value))
    return out


@dataclass
class TraceReport:
    """
    Attributes:
        trials: 시행별 비율
        conditions: 조건값 (계산하지 않았으면 None)
        condition_value: 영역에 맞는 조건값
        verdicts: 판정 플래그
        spectral_gap: R 변형에서 최선 시행의 직접 구적과 apply_R 값의 최대 상대 차
    """

    variant: str
    alpha: float
    p: float
    q: float
    trials: List[TrialRatio] = field(default_factory=list)
    conditions: Optional[ConditionValues] = None
    condition_value: Optional[float] = None
    verdicts: Dict[str, bool] = field(default_factory=dict)
    spectral_gap: Optional[float] = None

    @property
    def ratios(self) -> np.ndarray:
        return np.array([t.ratio for t in self.trials])

    @property
    def max_ratio(self) -> float:
        return float(self.ratios.max()) if self.trials else 0.0

    @property
    def mean_ratio(self) -> float:
        return float(self.ratios.mean()) if self.trials else 0.0

    @property
    def best_trial(self) -> str:
        if not self.trials:
            return ""
        return self.trials[int(np.argmax(self.ratios))].label

    @property
    def regime(self) -> str:
        return regime(self.p, self.q)


def trace_ratio(
    variant: Literal["R", "S"],
    mu: DiscreteMeasure,
    p: float,
    q: float,
    alpha: float,
    trials: int = 24,
    seed: int = 0,
    domain: Optional[TraceDomain] = None,
    with_conditions: bool = True,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
) -> TraceReport:
    """
    추적 비율 sup_h ‖T h‖_{L^q(μ)}/‖h‖_p 의 경험적 하계와 조건값

    Raises:
        RegimeError: S 변형에서 p ≥ 1 + n/(2α)
    """
    dim = mu.dim if len(mu) else 1
    if variant == "S":
        require_s_regime(p, dim, alpha)
    domain = domain or TraceDomain.for_measure(mu, alpha, variant)
    matrix = trace_matrix(mu, domain, alpha)

    family = trial_family(mu, domain, matrix, p, q, trials, seed)
    report = TraceReport(variant=variant, alpha=alpha, p=p, q=q)
    for label, values in family.items():
        report.trials.append(evaluate_trial(label, values, matrix, mu, domain, p, q))

    if with_conditions:
        cond = condition_values(
            variant, mu, p, q, alpha, settings, controls, with_compact=regime(p, q) == "p=q"
        )
        report.conditions = cond
        report.condition_value = regime_condition(cond, p, q)

    ratios = report.ratios
    report.verdicts = {
        "ratios_finite": bool(np.all(np.isfinite(ratios))),
        "condition_finite": report.condition_value is None or math.isfinite(report.condition_value),
    }
    if variant == "R" and len(mu) and report.max_ratio > 0:
        best = family[report.best_trial]
        direct = matrix @ best
        spectral = spectral_trace(best, domain, mu, alpha)
        report.spectral_gap = float(np.max(np.abs(direct - spectral)) / np.max(np.abs(direct)))
        report.verdicts["spectral_agreement"] = report.spectral_gap <= SPECTRAL_RTOL
    logger.debug(
        "trace %s p=%g q=%g: max=%.4e (%s) condition=%s",
        variant, p, q, report.max_ratio, report.best_trial, report.condition_value,
    )
    return report


@dataclass(frozen=True)
class ConsistencyResult:
    """
    측도 family 위 조건값과 최대 비율의 순위 상관

    Attributes:
        families: 행마다 family 이름 (dilation | thin_slab | two_scale | ...)
        parameters: 행마다 family 매개변수 (ε, 두께, 덩어리 폭)
        correlation: 모든 행을 합친 스피어만 상관
        family_correlations: 행이 3개 이상인 family 별 상관 (참고용)
    """

    families: List[str]
    parameters: List[float]
    ratios: List[float]
    conditions: List[float]
    correlation: float
    family_correlations: Dict[str, float] = field(default_factory=dict)


def theorem_consistency(
    members: Sequence[FamilyMember],
    variant: Literal["R", "S"],
    p: float,
    q: float,
    alpha: float,
    trials: int = 12,
    seed: int = 0,
    cells: int = 128,
    time_cells: int = 48,
    extent: float = 4.0,
    settings: GridSettings = GridSettings(),
    controls: SolverControls = SolverControls(),
) -> ConsistencyResult:
    """
    family 의 측도마다 추적 비율과 영역 조건값을 구해 스피어만 상관을 냅니다.

    정의역 격자는 측도마다 다시 만들어집니다. 확대 family 만으로는 두 값이 정확한
    거듭제곱 법칙이라 상관이 자명하므로 동차가 아닌 family 와 함께 순위를 매깁니다.
    """
    if len(members) < 3:
        raise ValueError(f"순위 상관에는 측도가 3개 이상 필요합니다: {len(members)}")
    ratios, conditions = [], []
    for member in members:
        domain = TraceDomain.for_measure(member.measure, alpha, variant, cells, time_cells, extent)
        report = trace_ratio(
            variant, member.measure, p, q, alpha, trials, seed, domain, True, settings, controls
        )
        ratios.append(report.max_ratio)
        conditions.append(float(report.condition_value))  # type: ignore[arg-type]
        logger.debug(
            "consistency %s=%g: ratio=%.4e condition=%.4e",
            member.family, member.parameter, report.max_ratio, conditions[-1],
        )

    families = [m.family for m in members]
    per_family = {}
    for name in dict.fromkeys(families):
        rows = [i for i, f in enumerate(families) if f == name]
        if len(rows) >= 3:
            per_family[name] = rank_correlation([conditions[i] for i in rows], [ratios[i] for i in rows])
    return ConsistencyResult(
        families=families,
        parameters=[m.parameter for m in members],
        ratios=ratios,
        conditions=conditions,
        correlation=rank_correlation(conditions, ratios),
        family_correlations=per_family,
    )
