"""
실험 컨텍스트 타입 정의

LangGraph State와 함께 전달되는 실험 실행 컨텍스트
"""

from typing import Any, Dict, Optional, TypedDict


class ExperimentContext(TypedDict):
    """
    실험 실행 컨텍스트

    파이프라인의 모든 실험이 공유하는 데이터 구조.
    """

    run_id: str                      # 시드에서 결정되는 실행 ID
    seed: int
    output_dir: str                  # 결과 루트 (<out>)
    config_path: Optional[str]       # 설정 파일 경로 (None이면 기본값)
    experiment_status: Dict[str, str]  # {name: 'pending'|'running'|'success'|'failed'}
    current_experiment: str


class ErrorInfo(TypedDict):
    """에러 정보"""
    type: str                        # 에러 타입 (예: RegimeError)
    message: str                     # 에러 메시지
    log_path: str                    # 에러 로그 파일 경로


class ExperimentOutput(TypedDict):
    """
    실험 출력 표준 구조

    결정성을 위해 시각 정보는 포함하지 않는다.
    """
    run_id: str
    experiment: str
    status: str                      # 'success' | 'failed'
    passed: bool                     # 단언한 성질이 모두 성립했는지
    error: Optional[ErrorInfo]
    data: Dict[str, Any]


def new_context(seed: int, output_dir: str, config_path: Optional[str] = None) -> ExperimentContext:
    """시드와 출력 경로로 컨텍스트를 만듭니다."""
    return {
        "run_id": f"seed-{seed}",
        "seed": seed,
        "output_dir": output_dir,
        "config_path": config_path,
        "experiment_status": {},
        "current_experiment": "",
    }
