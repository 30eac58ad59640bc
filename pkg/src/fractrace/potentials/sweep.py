"""
반경 구간 이벤트 스윕

원자마다 공 B_r 에 들어가는 열린 반경 구간 (lo_i, hi_i) 이 주어지면 μ(B_r) 는
구간 끝점 사이에서 상수입니다. 끝점을 정렬해 조각별 질량을 정확히 누적합니다.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SweepPieces:
    """
    (0, ρ) 의 분할과 조각별 질량

    Attributes:
        edges: (K+1,) 0 = e_0 < … < e_K (마지막은 ρ 또는 ∞)
        masses: (K,) 또는 (K, C) 조각 (e_k, e_{k+1}) 위의 채널별 질량
    """

    edges: np.ndarray
    masses: np.ndarray

    @property
    def lower(self) -> np.ndarray:
        return self.edges[:-1]

    @property
    def upper(self) -> np.ndarray:
        return self.edges[1:]

    def __len__(self) -> int:
        return int(self.masses.shape[0])


def sweep(
    lo: np.ndarray,
    hi: np.ndarray,
    weights: np.ndarray,
    rho: float = math.inf,
) -> SweepPieces:
    """
    구간 (lo_i, hi_i) 에 가중치 w_i 를 얹어 (0, ρ) 의 조각별 질량을 계산합니다.

    Args:
        lo, hi: (N,) 반경 구간 끝점. lo ≥ hi 인 원자는 무시
        weights: (N,) 또는 (N, C)
        rho: 절단 반경

    Returns:
        SweepPieces (0 과 ρ 를 포함하는 분할, 빈 조각의 질량은 0)
    """
    lo = np.asarray(lo, dtype=float).reshape(-1)
    hi = np.minimum(np.asarray(hi, dtype=float).reshape(-1), rho)
    weights = np.asarray(weights, dtype=float)
    channels = weights.shape[1:] if weights.ndim > 1 else ()

    active = (lo < hi) & (lo < rho)
    lo, hi, w = lo[active], hi[active], weights[active]

    edges = np.unique(np.concatenate([[0.0], lo, hi, [rho]]))
    edges = edges[edges <= rho]
    start, stop = np.searchsorted(edges, lo), np.searchsorted(edges, hi)
    delta = np.zeros((edges.size,) + channels)
    np.add.at(delta, start, w)
    np.add.at(delta, stop, -w)
    count = np.zeros(edges.size, dtype=np.int64)
    np.add.at(count, start, 1)
    np.add.at(count, stop, -1)

    masses = np.maximum(np.cumsum(delta, axis=0)[:-1], 0.0)
    # 원자가 없는 조각은 누적 뺄셈의 반올림 잔여 없이 정확히 0
    masses[np.cumsum(count)[:-1] == 0] = 0.0
    return SweepPieces(edges=edges, masses=masses)
