"""
커널 검증 스위트

모든 스위트는 같은 열 (suite, alpha, n, t, metric, value, bound, pass) 의 ReportTable 을
돌려줍니다.
"""

import math
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from fractrace.experiments.report import ReportTable
from fractrace.kernel.closed_form import eval_closed_form, origin_value
from fractrace.kernel.numeric import eval_numeric
from fractrace.kernel.sampler import richardson_density, sample_stable
from fractrace.kernel.spec import KernelSpec
from fractrace.kernel.validation import check_mass, check_self_similarity, envelope_ratio_scan

KERNEL_COLUMNS = ("suite", "alpha", "n", "t", "metric", "value", "bound", "pass")

DEFAULT_ALPHAS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_TIMES = (0.1, 1.0, 10.0)
STABLE_RADIUS = 0.1


def _table(suite: str) -> ReportTable:
    return ReportTable(f"kernel_{suite.replace('-', '_')}", KERNEL_COLUMNS)


def _random_point(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    direction = rng.normal(size=n)
    direction /= np.linalg.norm(direction)
    return direction * radius


def closed_form_suite(
    pairs: int = 200,
    dims: Sequence[int] = (1, 2),
    seed: int = 0,
    alphas: Sequence[float] = (0.5, 1.0),
) -> ReportTable:
    """수치 푸리에 역변환 대 닫힌 형태 (α ∈ {1/2, 1})"""
    table = _table("closed-form")
    rng = np.random.default_rng(seed)
    cases = [(a, n) for n in dims for a in alphas if a in (0.5, 1.0)]
    if not cases:
        return table
    for k in range(pairs):
        alpha, n = cases[k % len(cases)]
        spec = KernelSpec(alpha, n)
        t = float(10.0 ** rng.uniform(-1.0, 1.0))
        x = _random_point(rng, n, float(rng.uniform(0.0, 3.0)) * spec.time_scale(t))
        numeric = eval_numeric(spec, t, x)
        exact = eval_closed_form(spec, t, x)
        error = abs(numeric.value - exact.value)
        bound = numeric.abs_error_bound + exact.abs_error_bound
        table.add("closed-form", alpha, n, t, "abs_error", error, bound, error <= bound)
    return table


def mass_suite(
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    dims: Sequence[int] = (1, 2),
    times: Sequence[float] = DEFAULT_TIMES,
) -> ReportTable:
    table = _table("mass")
    for n in dims:
        for alpha in alphas:
            spec = KernelSpec(alpha, n)
            for t in times:
                report = check_mass(spec, t)
                table.add("mass", alpha, n, t, "mass_defect", report.defect, 1e-3, report.passed)
    return table


def scaling_suite(
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    dims: Sequence[int] = (1, 2),
    times: Sequence[float] = DEFAULT_TIMES,
) -> ReportTable:
    """자기유사성 K_t(x) = t^{-n/2α} K_1(t^{-1/2α}x) 잔차"""
    table = _table("scaling")
    for n in dims:
        for alpha in alphas:
            spec = KernelSpec(alpha, n)
            for t in times:
                x = np.full(n, 0.7 * spec.time_scale(t) / math.sqrt(n))
                report = check_self_similarity(spec, t, x)
                table.add("scaling", alpha, n, t, "residual", report.residual, report.bound, report.passed)
    return table


def envelope_suite(
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    dims: Sequence[int] = (1, 2),
) -> ReportTable:
    """K_t(x)·(t^{1/2α} + |x|)^{n+2α}/t 의 범위. α = 1 은 flagged 로 기록되며 실패가 아님."""
    table = _table("envelope")
    t_grid = np.logspace(-2, 2, 9)
    x_grid = np.concatenate([[0.0], np.logspace(-2, 2, 17)])
    for n in dims:
        for alpha in alphas:
            scan = envelope_ratio_scan(KernelSpec(alpha, n), t_grid, x_grid)
            table.add("envelope", alpha, n, math.nan, "min_ratio", scan.min_ratio, 0.0, scan.passed)
            table.add("envelope", alpha, n, math.nan, "max_ratio", scan.max_ratio, math.inf, scan.passed)
            table.add("envelope", alpha, n, math.nan, "flagged", float(scan.flagged), 0.0, True)
    return table


def stable_suite(samples: int = 1_000_000, seed: int = 0) -> ReportTable:
    """
    안정 샘플러 원점 밀도 (리처드슨) 대 정확한 K_1(0)

    α = 1/2 는 1/π 에 1% 이내, α = 0.75 는 Γ(5/3)/π 에 2% 이내.
    """
    table = _table("stable")
    for alpha, bound in ((0.5, 0.01), (0.75, 0.02)):
        spec = KernelSpec(alpha, 1)
        draws = sample_stable(spec, 1.0, samples, seed)
        estimate = richardson_density(draws, STABLE_RADIUS)
        exact = origin_value(spec, 1.0)
        error = abs(estimate - exact) / exact
        table.add("stable", alpha, 1, 1.0, "relative_error", error, bound, error <= bound)
    return table


SUITES: Dict[str, Callable[..., ReportTable]] = {
    "closed-form": closed_form_suite,
    "mass": mass_suite,
    "scaling": scaling_suite,
    "envelope": envelope_suite,
    "stable": stable_suite,
}


def run_kernel_suite(
    suite: str,
    alpha: Optional[float] = None,
    dim: Optional[int] = None,
    seed: int = 0,
    **params: object,
) -> ReportTable:
    """
    이름으로 스위트를 실행합니다. alpha, dim 을 주면 그 값으로 좁힙니다.

    Raises:
        ValueError: 알 수 없는 스위트
    """
    if suite not in SUITES:
        raise ValueError(f"알 수 없는 커널 스위트입니다: {suite} (가능: {', '.join(SUITES)})")
    kwargs: Dict[str, object] = dict(params)
    if suite in ("closed-form", "mass", "scaling", "envelope"):
        if alpha is not None:
            kwargs["alphas"] = (alpha,)
        if dim is not None:
            kwargs["dims"] = (dim,)
    if suite in ("closed-form", "stable"):
        kwargs["seed"] = seed
    return SUITES[suite](**kwargs)
