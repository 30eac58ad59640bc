"""
CLI Commands 모듈
"""

from fractrace.cli.commands.capacity import capacity_command
from fractrace.cli.commands.experiments import (
    capacitary_command,
    scaling_command,
    strichartz_command,
    trace_command,
)
from fractrace.cli.commands.kernel import kernel_eval_command, kernel_validate_command
from fractrace.cli.commands.maximal import maximal_command
from fractrace.cli.commands.suite import suite_command
from fractrace.cli.commands.wolff import wolff_command

__all__ = [
    "kernel_eval_command",
    "kernel_validate_command",
    "wolff_command",
    "maximal_command",
    "capacity_command",
    "scaling_command",
    "trace_command",
    "strichartz_command",
    "capacitary_command",
    "suite_command",
]
