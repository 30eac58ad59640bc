"""
kernel 명령어 구현
"""

from pathlib import Path
from typing import Any

from fractrace.cli.commands.common import (
    EXIT_OK,
    experiment_config,
    load_config,
    output_dir,
    parse_point,
    run_experiment,
    write_summary,
)
from fractrace.experiments.kernel.experiment import KernelExperiment
from fractrace.kernel.numeric import evaluate
from fractrace.kernel.spec import KernelSpec


def kernel_eval_command(args: Any) -> int:
    """
    K_t(x) 하나를 평가해 값과 오차 한계를 출력합니다.

    Args:
        args: CLI 인자
    """
    config = load_config(args)
    x = parse_point(args.x)
    if len(x) != args.dim:
        raise ValueError(f"x 의 차원 {len(x)} 가 --dim {args.dim} 과 다릅니다")

    spec = KernelSpec(
        alpha=args.alpha,
        dim=args.dim,
        freq_nodes=int(config.get("kernel.freq_nodes", 128)),
        tol=args.tol if args.tol is not None else config.get("kernel.tol"),
    )
    result = evaluate(spec, args.t, x)
    method = "closed_form" if spec.has_closed_form else "numeric"

    print(f"K_{args.t:g}({args.x}) = {result.value!r}")
    print(f"  오차 한계: {result.abs_error_bound:.3e} ({method})")

    write_summary(output_dir(args, config), {
        "alpha": args.alpha,
        "dim": args.dim,
        "t": args.t,
        "x": list(x),
        "value": result.value,
        "abs_error_bound": result.abs_error_bound,
        "method": method,
        "passed": True,
    })
    return EXIT_OK


def kernel_validate_command(args: Any) -> int:
    """
    검증 스위트 하나를 실행해 CSV `suite,alpha,n,t,metric,value,bound,pass` 를 씁니다.
    """
    return run_experiment(args, KernelExperiment, experiment_config(args, suite=args.suite))
