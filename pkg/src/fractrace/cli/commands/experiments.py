"""
scaling, trace, strichartz, capacitary 명령어 구현

설정 파일 값 대신 CLI 인자로 실험 하나를 실행합니다.
"""

from typing import Any

from fractrace.cli.commands.common import experiment_config, run_experiment
from fractrace.experiments.capacitary.experiment import CapacitaryExperiment
from fractrace.experiments.scaling.experiment import ScalingExperiment
from fractrace.experiments.strichartz.experiment import StrichartzExperiment
from fractrace.experiments.trace.experiment import TraceExperiment


def scaling_command(args: Any) -> int:
    """B_r 용량의 로그-로그 기울기"""
    return run_experiment(args, ScalingExperiment, experiment_config(args, radii=args.radii))


def trace_command(args: Any) -> int:
    """
    추적 비율과 영역 조건값

    --measure 는 "file:<경로>" 또는 내장 family 이름입니다.
    """
    return run_experiment(args, TraceExperiment, experiment_config(args))


def strichartz_command(args: Any) -> int:
    return run_experiment(args, StrichartzExperiment, experiment_config(args))


def capacitary_command(args: Any) -> int:
    """초과집합 용량 부등식 (--trials 는 시드 수)"""
    return run_experiment(args, CapacitaryExperiment, experiment_config(args))
