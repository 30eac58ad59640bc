"""
로깅 유틸리티

<out>/logs/{name}/{timestamp}.log 형식으로 로그를 저장합니다.
로그 파일은 타임스탬프를 포함하므로 결과 파일의 결정성 보장 대상이 아닙니다.
"""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional


class FractraceLogger:
    """
    Fractrace 로거

    실험(또는 명령)별로 독립적인 로그 파일을 생성하고 관리합니다.
    """

    def __init__(
        self,
        name: str,
        output_dir: Path,
        log_to_console: bool = True,
    ) -> None:
        """
        Args:
            name: 로거 이름 (예: 'kernel_experiment')
            output_dir: 결과 출력 디렉토리
            log_to_console: 콘솔에도 로그 출력 여부
        """
        self.name = name
        self.output_dir = output_dir
        self.log_to_console = log_to_console

        self.log_dir = output_dir / "logs" / name
        self.log_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y-%m-%dT%H-%M-%S")
        self.log_file = self.log_dir / f"{timestamp}.log"

        self.logger = logging.getLogger(f"fractrace.{name}")
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        for handler in list(self.logger.handlers):
            handler.close()
        self.logger.handlers.clear()

        file_handler = logging.FileHandler(self.log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(
            logging.Formatter(
                "[%(asctime)s] %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        self.logger.addHandler(file_handler)

        if log_to_console:
            console_handler = logging.StreamHandler(sys.stdout)
            console_handler.setLevel(logging.INFO)
            console_handler.setFormatter(logging.Formatter("[%(name)s] %(message)s"))
            self.logger.addHandler(console_handler)

    def debug(self, message: str) -> None:
        """디버그 로그"""
        self.logger.debug(message)

    def info(self, message: str) -> None:
        """정보 로그"""
        self.logger.info(message)

    def warning(self, message: str) -> None:
        """경고 로그"""
        self.logger.warning(message)

    def error(self, message: str) -> None:
        """에러 로그"""
        self.logger.error(message)

    def exception(self, message: str) -> None:
        """예외 로그 (스택 트레이스 포함)"""
        self.logger.exception(message)

    def log_solver(self, solver: str, iterations: int, converged: bool, residual: float) -> None:
        """
        최적화/구적 솔버 실행 로그

        Args:
            solver: 솔버 이름
            iterations: 반복 횟수
            converged: 수렴 여부
            residual: 최종 잔차 (또는 쌍대 간극)
        """
        self.info(f"Solver: {solver}")
        self.debug(f"iterations={iterations} residual={residual:.3e}")
        if converged:
            self.info("수렴")
        else:
            self.warning(f"{solver} 미수렴 (반복 {iterations}회, 잔차 {residual:.3e})")

    def log_check(self, name: str, passed: bool, detail: str = "") -> None:
        """성질 단언 결과 (실패는 경고 수준)"""
        line = f"{name} {detail}".rstrip()
        if passed:
            self.info(f"✓ {line}")
        else:
            self.warning(f"✗ {line}")

    def get_log_path(self) -> Path:
        """현재 로그 파일 경로 반환"""
        return self.log_file

    def close(self) -> None:
        """파일 핸들러를 닫습니다."""
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)


def get_logger(
    name: str,
    output_dir: Optional[Path] = None,
    log_to_console: bool = True,
) -> FractraceLogger:
    """
    로거 인스턴스 생성 헬퍼 함수

    Args:
        name: 로거 이름
        output_dir: 출력 디렉토리 (None이면 현재 디렉토리)
        log_to_console: 콘솔 출력 여부

    Returns:
        FractraceLogger 인스턴스
    """
    if output_dir is None:
        output_dir = Path.cwd()

    return FractraceLogger(name, Path(output_dir), log_to_console)
