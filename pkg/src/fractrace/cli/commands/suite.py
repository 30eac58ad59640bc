"""
suite 명령어 구현
"""

from typing import Any

from fractrace.cli.commands.common import (
    EXIT_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    load_config,
    output_dir,
)
from fractrace.pipeline.graph import FractracePipeline


def suite_command(args: Any) -> int:
    """
    전체 실험 파이프라인 실행

    Args:
        args: CLI 인자
    """
    config = load_config(args)
    out = output_dir(args, config)
    print("Fractrace 스위트 실행 중...")

    pipeline = FractracePipeline(config, out, int(args.seed), args.stages)
    summary = pipeline.run()

    print("=" * 60)
    for name, result in summary["experiments"].items():
        mark = "✓" if result["passed"] else "❌"
        print(f"{mark} {name} ({result['status']})")
    print(f"\n요약: {out / 'summary.json'}")

    if summary["errors"]:
        return EXIT_ERROR
    return EXIT_OK if summary["passed"] else EXIT_PROPERTY_FAILURE
