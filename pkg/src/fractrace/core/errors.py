"""
Fractrace 예외 계층
"""

from typing import Optional


class FractraceError(Exception):
    """모든 fractrace 예외의 기본 클래스"""


class QuadratureError(FractraceError):
    """구적(quadrature)이 요청 허용오차 안으로 수렴하지 못함"""

    def __init__(self, message: str, achieved_bound: float, tolerance: float) -> None:
        super().__init__(f"{message} (달성 오차 {achieved_bound:.3e} > 허용 {tolerance:.3e})")
        self.achieved_bound = achieved_bound
        self.tolerance = tolerance


class AliasingError(FractraceError, ValueError):
    """필드 지지집합이 상자의 바깥 1/4 영역에 닿음 (주기 확장 앨리어싱)"""


class RegimeError(FractraceError, ValueError):
    """지수 영역 위반 (예: S 경로의 p < 1 + n/(2α), Wolff 경로의 p ≠ q)"""


class GridCoverageError(FractraceError):
    """노름 격자가 포락선상 유의한 영역을 덮지 못함"""

    def __init__(self, message: str, tail: Optional[float] = None) -> None:
        super().__init__(message)
        self.tail = tail


class InfeasibleCapacityError(FractraceError):
    """어떤 K 샘플의 커널 결합 행이 전부 0 (이 격자에서 용량 문제가 정의되지 않음)"""


class ReportError(FractraceError, OSError):
    """결과 파일 입출력 실패"""
