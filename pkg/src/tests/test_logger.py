"""
FractraceLogger 파일 로그
"""

from pathlib import Path

from fractrace.core.logger import get_logger


class TestFractraceLogger:
    def test_log_file_under_experiment_dir(self, tmp_path: Path) -> None:
        logger = get_logger("kernel_experiment", tmp_path, log_to_console=False)
        try:
            path = logger.get_log_path()
            assert path.parent == tmp_path / "logs" / "kernel_experiment"
            assert path.suffix == ".log"
        finally:
            logger.close()

    def test_checks_and_solver_lines(self, tmp_path: Path) -> None:
        logger = get_logger("capacity_experiment", tmp_path, log_to_console=False)
        logger.log_check("괄호 순서", True, "dual ≤ primal")
        logger.log_check("간극", False)
        logger.log_solver("capacity_dual", 12, False, 0.25)
        logger.close()

        text = logger.get_log_path().read_text(encoding="utf-8")
        assert "INFO - ✓ 괄호 순서 dual ≤ primal" in text
        assert "WARNING - ✗ 간극" in text
        assert "capacity_dual 미수렴 (반복 12회, 잔차 2.500e-01)" in text
        assert "DEBUG - iterations=12" in text

    def test_recreated_logger_does_not_duplicate_handlers(self, tmp_path: Path) -> None:
        first = get_logger("trace_experiment", tmp_path, log_to_console=False)
        first.close()
        second = get_logger("trace_experiment", tmp_path, log_to_console=False)
        try:
            assert len(second.logger.handlers) == 1
        finally:
            second.close()
