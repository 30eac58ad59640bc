"""
벡터화 커널 평가기

K_t(x) = t^{-n/2α} K_1(t^{-1/2α}|x|) 이므로 K_1 의 반경 프로파일 하나로 모든 (t, x) 를
평가할 수 있습니다. α ∈ {1/2, 1} 은 닫힌 형태, 그 외에는 eval_numeric 으로 만든 표를
log K 에 대한 PCHIP 보간으로 잇고, 표 끝 너머는 점근 급수로 이어 붙입니다.
수반 작용소, 용량 결합 행렬, 쌍대성 격자 등 대량 평가에 사용됩니다.
"""

import logging
from functools import lru_cache

import numpy as np
from scipy.interpolate import PchipInterpolator

from fractrace.kernel.closed_form import closed_form_values, tail_series
from fractrace.kernel.numeric import eval_numeric
from fractrace.kernel.spec import KernelSpec

logger = logging.getLogger(__name__)

TABLE_RADIUS = 200.0
TABLE_NODES = 161
TABLE_TOL = 1e-11


class KernelProfile:
    """
    (α, n) 별 커널 평가기

    Args:
        spec: 커널 사양
    """

    def __init__(self, spec: KernelSpec) -> None:
        self.spec = spec
        self.n = spec.dim
        self.beta = spec.beta
        self._interp: PchipInterpolator | None = None
        self._z_match = 0.0
        self._match_factor = 1.0
        if not spec.has_closed_form:
            self._build_table()

    def _build_table(self) -> None:
        u = np.linspace(0.0, np.arcsinh(TABLE_RADIUS), TABLE_NODES)
        z = np.sinh(u)
        values = np.empty_like(z)
        bounds = np.empty_like(z)
        for i, zi in enumerate(z):
            kv = eval_numeric(self.spec, 1.0, zi, tol=TABLE_TOL)
            values[i] = kv.value
            bounds[i] = kv.abs_error_bound

        # 상대 정확도가 유지되는 마지막 노드까지만 표로 쓴다
        reliable = values > 1e3 * bounds
        last = int(np.nonzero(reliable)[0].max())
        z, values = z[: last + 1], values[: last + 1]

        self._interp = PchipInterpolator(z, np.log(values))
        self._z_match = float(z[-1])
        series = float(tail_series(self.spec, np.array(self._z_match)))
        self._match_factor = values[-1] / series if series > 0 else 1.0
        self._tail_power_anchor = float(values[-1])
        logger.debug(
            "커널 표 생성 α=%g n=%d: 노드 %d개, 접합 반경 %.1f, 접합 계수 %.6f",
            self.spec.alpha, self.n, z.size, self._z_match, self._match_factor,
        )

    def unit(self, z: np.ndarray) -> np.ndarray:
        """K_1(z), z = |x| ≥ 0"""
        z = np.asarray(z, dtype=float)
        if self.spec.has_closed_form:
            return closed_form_values(self.spec.alpha, self.n, np.ones_like(z), z)

        assert self._interp is not None
        out = np.empty_like(z)
        inside = z <= self._z_match
        out[inside] = np.exp(self._interp(z[inside]))
        far = z[~inside]
        if far.size:
            series = tail_series(self.spec, far)
            if self._match_factor > 0 and np.all(series > 0):
                out[~inside] = self._match_factor * series
            else:
                out[~inside] = self._tail_power_anchor * (self._z_match / far) ** (self.n + self.beta)
        return out

    def __call__(self, t: np.ndarray, r: np.ndarray) -> np.ndarray:
        """
        K_t(x) 를 브로드캐스트로 평가합니다. t ≤ 0 인 위치는 0 입니다.

        Args:
            t: 시간 배열
            r: |x| 배열

        Returns:
            커널 값 배열
        """
        t, r = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(r, dtype=float))
        out = np.zeros(t.shape)
        positive = t > 0
        if np.any(positive):
            tp = t[positive]
            if self.spec.has_closed_form:
                out[positive] = closed_form_values(self.spec.alpha, self.n, tp, r[positive])
            else:
                scale = tp ** (1.0 / self.beta)
                out[positive] = scale ** (-self.n) * self.unit(r[positive] / scale)
        return out

    def at_points(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        """점 배열 x (..., n) 에서 K_t(x)"""
        x = np.asarray(x, dtype=float)
        return self(t, np.linalg.norm(x, axis=-1))


@lru_cache(maxsize=32)
def _cached_profile(alpha: float, dim: int, freq_nodes: int) -> KernelProfile:
    return KernelProfile(KernelSpec(alpha=alpha, dim=dim, freq_nodes=freq_nodes))


def get_profile(spec: KernelSpec) -> KernelProfile:
    """(α, n, freq_nodes) 별로 캐시된 KernelProfile 을 반환합니다."""
    return _cached_profile(spec.alpha, spec.dim, spec.freq_nodes)


def domination_constant(spec: KernelSpec) -> float:
    """
    c₀ = 3^{-n/2α}·K_1(2^{-1/2α})

    B_r(r^{2α}, x) 안의 원자 (s, y) 는 2r^{2α} < s < 3r^{2α}, |y − x| < r 이므로
    K_s(x − y) ≥ c₀ r^{-n} 이고, 따라서 R_α^*μ(x) ≥ c₀ M_αμ(x) 입니다.
    """
    z = 2.0 ** (-1.0 / spec.beta)
    return 3.0 ** (-spec.dim / spec.beta) * float(get_profile(spec).unit(np.array([z]))[0])
