"""
R_α, S_α 의 스펙트럼 적용과 PDE 잔차

상자의 주기 확장 위에서 승수 e^{-t|ξ|^{2α}} 로 R_α 를, 사다리꼴 듀하멜 구적으로 S_α 를
적용합니다. 주기 확장의 앨리어싱은 지지집합을 안쪽 절반 상자로 제한해 억제합니다.
"""

import logging

import numpy as np

from fractrace.core.errors import AliasingError
from fractrace.kernel.spec import KernelSpec
from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid

logger = logging.getLogger(__name__)

SUPPORT_THRESHOLD = 1e-14
BANDLIMIT_TOL = 1e-10


def check_support(grid: SpatialGrid, values: np.ndarray) -> None:
    """
    지지집합이 바깥 1/4 영역 (어떤 좌표든 |x_i| > L/2) 에 닿으면 AliasingError.

    values 의 앞쪽 축은 시간 등 추가 축일 수 있습니다.
    """
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    if scale == 0.0:
        return
    support = np.abs(values) > SUPPORT_THRESHOLD * scale
    support = support.reshape((-1,) + grid.shape).any(axis=0)
    outer = np.zeros(grid.shape, dtype=bool)
    for coord in grid.mesh():
        outer |= np.abs(coord) > grid.half_width / 2.0
    if np.any(support & outer):
        raise AliasingError(
            f"필드 지지집합이 상자의 바깥 1/4 영역에 닿습니다 (L={grid.half_width}); "
            "안쪽 절반 |x_i| ≤ L/2 에 두거나 periodic=True 로 주기 데이터를 명시하세요"
        )


def check_bandlimited(grid: SpatialGrid, values: np.ndarray) -> None:
    """스펙트럼 에너지가 최고 주파수 1/4 대역에 남아 있으면 AliasingError"""
    axes = tuple(range(values.ndim - grid.dim, values.ndim))
    energy = np.abs(np.fft.fftn(values, axes=axes)) ** 2
    total = float(energy.sum())
    if total == 0.0:
        return
    nyquist = np.pi / grid.spacing
    high = np.zeros(grid.shape, dtype=bool)
    for k in grid.wavenumbers():
        high |= np.abs(k) > 0.75 * nyquist
    if float(energy[..., high].sum()) > BANDLIMIT_TOL * total:
        raise AliasingError("데이터가 격자에서 대역 제한되어 있지 않습니다 (고주파 에너지 과다)")


def _spatial_axes(grid: SpatialGrid, values: np.ndarray) -> tuple:
    return tuple(range(values.ndim - grid.dim, values.ndim))


def apply_R(f: SpatialField, t: float, spec: KernelSpec, periodic: bool = False) -> SpatialField:
    """
    R_α f(t) = e^{-t(−Δ)^α} f 를 주기 격자에서 스펙트럼으로 적용합니다.

    Args:
        f: 공간 필드
        t: 시간 ≥ 0 (t = 0 이면 f 그대로)
        spec: 커널 사양
        periodic: True 이면 f 를 주기 데이터로 보고 지지집합 검사를 생략

    Raises:
        AliasingError: 지지집합이 바깥 1/4 영역에 닿음
    """
    if t < 0:
        raise ValueError(f"t 는 음수일 수 없습니다: {t}")
    if t == 0:
        return f
    if not periodic:
        check_support(f.grid, f.values)
    multiplier = np.exp(-t * f.grid.symbol(spec.alpha))
    out = np.fft.ifftn(np.fft.fftn(f.values) * multiplier).real
    return SpatialField(f.grid, out)


def apply_S(g: SpaceTimeField, spec: KernelSpec, periodic: bool = False) -> SpaceTimeField:
    """
    듀하멜 적분 S_α g(t) = ∫_0^t e^{-(t−s)(−Δ)^α} g(s) ds.

    사다리꼴 규칙을 푸리에 공간 점화식
    Ŝ_m = e^{-dt·λ}(Ŝ_{m−1} + dt/2·ĝ_{m−1}) + dt/2·ĝ_m 로 구현합니다
    (s = t 끝점은 항등 작용소). 출력의 t_0 = 0 슬라이스는 0 입니다.
    """
    if not periodic:
        check_support(g.grid, g.values)
    dt = g.time.dt
    step = np.exp(-dt * g.grid.symbol(spec.alpha))
    axes = _spatial_axes(g.grid, g.values)
    g_hat = np.fft.fftn(g.values, axes=axes)

    s_hat = np.zeros_like(g_hat)
    for m in range(1, g.time.steps + 1):
        s_hat[m] = step * (s_hat[m - 1] + 0.5 * dt * g_hat[m - 1]) + 0.5 * dt * g_hat[m]
    out = np.fft.ifftn(s_hat, axes=axes).real
    out[0] = 0.0
    return SpaceTimeField(g.grid, g.time, out)


def fractional_laplacian(values: np.ndarray, grid: SpatialGrid, alpha: float) -> np.ndarray:
    """스펙트럼 승수 |ξ|^{2α} 로 (−Δ)^α 를 적용 (앞쪽 추가 축 허용)"""
    axes = _spatial_axes(grid, values)
    return np.fft.ifftn(np.fft.fftn(values, axes=axes) * grid.symbol(alpha), axes=axes).real


def duhamel_solution(f: SpatialField, g: SpaceTimeField, spec: KernelSpec) -> np.ndarray:
    """u = R_α f + S_α g 를 g 의 시간 노드에서 (주기 데이터로) 계산"""
    if f.grid != g.grid:
        raise ValueError("f 와 g 의 격자가 다릅니다")
    times = g.time.nodes().reshape((-1,) + (1,) * g.grid.dim)
    free = np.fft.ifftn(
        np.fft.fftn(f.values)[None, ...] * np.exp(-times * g.grid.symbol(spec.alpha)),
        axes=_spatial_axes(g.grid, g.values),
    ).real
    return free + apply_S(g, spec, periodic=True).values


def pde_residual(f: SpatialField, g: SpaceTimeField, spec: KernelSpec) -> float:
    """
    max |∂_t u + (−Δ)^α u − g| (내부 시간, 중심 차분) 를 반환합니다.

    Raises:
        AliasingError: f 또는 g 가 격자에서 대역 제한되어 있지 않음
    """
    check_bandlimited(f.grid, f.values)
    check_bandlimited(g.grid, g.values)
    u = duhamel_solution(f, g, spec)
    if g.time.steps < 2:
        raise ValueError("중심 차분에는 시간 단계가 2개 이상 필요합니다")
    dt = g.time.dt
    du = (u[2:] - u[:-2]) / (2.0 * dt)
    lap = fractional_laplacian(u[1:-1], g.grid, spec.alpha)
    residual = float(np.max(np.abs(du + lap - g.values[1:-1])))
    logger.debug("pde_residual α=%g dt=%g: %.3e", spec.alpha, dt, residual)
    return residual
