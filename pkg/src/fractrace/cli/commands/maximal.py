"""
maximal 명령어 구현
"""

import csv
from pathlib import Path
from typing import Any

import numpy as np

from fractrace.cli.commands.common import EXIT_OK, load_config, output_dir, write_summary
from fractrace.cli.commands.wolff import point_table, query_points
from fractrace.experiments.base import dyadic_scales
from fractrace.experiments.report import emit_report
from fractrace.geometry.measure import DiscreteMeasure, load_measure
from fractrace.potentials.dyadic import maximal_dyadic
from fractrace.potentials.maximal import maximal_centered, maximal_R, maximal_spacetime


def _load_g(path: str | None, mu: DiscreteMeasure) -> np.ndarray:
    """원자별 g (단일 열 CSV `g`), 없으면 1"""
    if not path:
        return np.ones(len(mu))
    with open(Path(path), "r", encoding="utf-8") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if not header or header[0].strip() != "g":
            raise ValueError(f"g CSV 헤더는 g 여야 합니다: {path}")
        return np.array([float(row[0]) for row in reader if row])


def maximal_command(args: Any) -> int:
    """
    질의점마다 최대함수 M_α (R: x 만 사용, spacetime, centered, dyadic) 를 계산합니다.

    Args:
        args: CLI 인자
    """
    config = load_config(args)
    out = output_dir(args, config)
    mu = load_measure(Path(args.measure))
    times, points = query_points(args, mu)
    g = _load_g(args.g, mu) if args.variant in ("centered", "dyadic") else None

    values = np.empty(times.size)
    for k, (t, x) in enumerate(zip(times, points)):
        query = (float(t), tuple(np.atleast_1d(x)))
        if args.variant == "R":
            values[k] = maximal_R(mu, x, args.alpha)
        elif args.variant == "spacetime":
            values[k] = maximal_spacetime(mu, query, args.alpha)
        elif args.variant == "centered":
            values[k] = maximal_centered(g, mu, query, args.alpha)
        else:
            values[k] = maximal_dyadic(g, mu, query, args.alpha, dyadic_scales(config))

    paths = emit_report([point_table("maximal", times, points, values)], out)
    print(f"✓ 최대함수 ({args.variant}) {times.size}개 질의점: {paths[0]}")

    write_summary(out, {
        "variant": args.variant,
        "alpha": args.alpha,
        "points": int(times.size),
        "max_value": float(values.max(initial=0.0)),
        "passed": True,
    })
    return EXIT_OK
