"""
wolff 명령어 구현
"""

import math
from pathlib import Path
from typing import Any, Tuple

import numpy as np

from fractrace.cli.commands.common import (
    EXIT_OK,
    load_config,
    load_points,
    output_dir,
    write_summary,
)
from fractrace.experiments.base import dyadic_scales
from fractrace.experiments.report import ReportTable, emit_report
from fractrace.geometry.measure import DiscreteMeasure, load_measure
from fractrace.potentials.dyadic import wolff_dyadic
from fractrace.potentials.wolff import wolff_R, wolff_S


def query_points(args: Any, mu: DiscreteMeasure) -> Tuple[np.ndarray, np.ndarray]:
    """--points 파일 또는 --at-atoms"""
    if args.at_atoms:
        return mu.times, mu.points
    if not args.points:
        raise ValueError("--points FILE 또는 --at-atoms 중 하나가 필요합니다")
    return load_points(Path(args.points))


def point_table(name: str, times: np.ndarray, points: np.ndarray, values: np.ndarray) -> ReportTable:
    """CSV `t,x,value` (n > 1 이면 x 는 'x1;x2')"""
    table = ReportTable(name, ("t", "x", "value"))
    for t, x, v in zip(times, points, values):
        coords = ";".join(repr(float(c)) for c in np.atleast_1d(x))
        table.add(float(t), coords, float(v))
    return table


def wolff_command(args: Any) -> int:
    """
    질의점마다 Wolff 퍼텐셜 P^R, P^S 또는 dyadic P^d 를 계산합니다.

    Args:
        args: CLI 인자
    """
    config = load_config(args)
    out = output_dir(args, config)
    mu = load_measure(Path(args.measure))
    times, points = query_points(args, mu)
    rho = args.rho if args.rho is not None else math.inf
    scales = dyadic_scales(config)

    values = np.empty(times.size)
    for k, (t, x) in enumerate(zip(times, points)):
        eval_point = (float(t), tuple(np.atleast_1d(x)))
        if args.variant == "dyadic":
            values[k] = wolff_dyadic(mu, args.p, eval_point, args.alpha, scales).value
        elif args.variant == "S":
            values[k] = wolff_S(mu, args.p, eval_point, args.alpha, rho).value
        else:
            values[k] = wolff_R(mu, args.p, eval_point, args.alpha, rho).value

    paths = emit_report([point_table("wolff", times, points, values)], out)
    print(f"✓ Wolff 퍼텐셜 ({args.variant}) {times.size}개 질의점: {paths[0]}")

    write_summary(out, {
        "variant": args.variant,
        "p": args.p,
        "alpha": args.alpha,
        "rho": rho,
        "points": int(times.size),
        "max_value": float(values.max(initial=0.0)),
        "passed": True,
    })
    return EXIT_OK
