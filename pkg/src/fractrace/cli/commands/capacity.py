"""
capacity 명령어 구현
"""

from pathlib import Path
from typing import Any, Optional

from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox, ball_samples, load_set
from fractrace.capacity.solver import CapacityEstimate, GridSettings, SolverControls, capacity_dual
from fractrace.capacity.superlevel import superlevel_capacity
from fractrace.cli.commands.common import (
    EXIT_OK,
    EXIT_PROPERTY_FAILURE,
    load_config,
    output_dir,
    write_summary,
)
from fractrace.core.config import Config
from fractrace.experiments.report import ReportTable, emit_report
from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import save_measure
from fractrace.semigroup.fields import SpaceTimeField
from fractrace.semigroup.io import load_field


def parse_grid(text: str, variant: str) -> CapacityGrid:
    """
    "L,h,T,M" → [−L, L] 공간, 간격 h, 시간 [0, T] 의 M 셀

    Raises:
        ValueError: 형식 오류
    """
    try:
        L, h, T, M = (float(v) for v in text.split(","))
    except ValueError as e:
        raise ValueError(f'--grid 는 "L,h,T,M" 형식이어야 합니다: {text!r}') from e
    return CapacityGrid(
        variant=variant,  # type: ignore[arg-type]
        x_lo=-L,
        x_hi=L,
        cells=max(1, round(2.0 * L / h)),
        horizon=T if variant == "S" else 0.0,
        time_cells=int(M) if variant == "S" else 0,
    )


def _controls(args: Any, config: Config) -> SolverControls:
    base = SolverControls.from_config(config)
    return SolverControls(
        max_iter=args.max_iter if args.max_iter is not None else base.max_iter,
        tol=args.tol if args.tol is not None else base.tol,
        feas_tol=base.feas_tol,
    )


def _solve(args: Any, K: CompactSetApprox, config: Config, controls: SolverControls) -> CapacityEstimate:
    if args.grid:
        grid = parse_grid(args.grid, args.variant)
    else:
        grid = GridSettings.from_config(config).grid_for(K, args.variant, args.alpha)
    return capacity_dual(args.variant, K, args.p, args.alpha, grid, controls)


def _ball(args: Any, r: float, config: Config) -> CompactSetApprox:
    return ball_samples(
        ParabolicBall(0.0, (0.0,), r, args.alpha),
        int(config.get("capacity.time_samples", 16)),
        int(config.get("capacity.space_samples", 32)),
    )


def _save_witnesses(estimate: CapacityEstimate, out: Path) -> Path:
    """증인 측도 μ 와 증인 h 를 <out>/capacity/ 아래 CSV 로"""
    witness_dir = out / "capacity"
    witness_dir.mkdir(parents=True, exist_ok=True)
    table = ReportTable("witness_h", ("cell", "h"))
    for k, value in enumerate(estimate.witness_h):
        table.add(k, float(value))
    emit_report([table], witness_dir)
    path = witness_dir / "witness_mu.csv"
    save_measure(estimate.witness_mu, path)
    return path


def capacity_command(args: Any) -> int:
    """
    용량 괄호 [dual, primal] 을 계산합니다.

    ball: B_r(0, 0) (--radii 를 주면 r 스윕 CSV `r,primal,dual`)
    file: --set FILE 의 표본 집합
    superlevel: --field FILE 의 g 에 대한 E_λ(g) (S 변형)

    Args:
        args: CLI 인자
    """
    config = load_config(args)
    out = output_dir(args, config)
    controls = _controls(args, config)

    sweep: Optional[ReportTable] = None
    if args.target == "ball":
        estimate = _solve(args, _ball(args, args.r, config), config, controls)
        if args.radii:
            sweep = ReportTable("capacity_sweep", ("r", "primal", "dual"))
            for r in args.radii:
                point = _solve(args, _ball(args, r, config), config, controls)
                sweep.add(r, point.primal_value, point.dual_value)
    elif args.target == "file":
        if not args.set:
            raise ValueError("file 대상에는 --set FILE 이 필요합니다")
        estimate = _solve(args, load_set(Path(args.set)), config, controls)
    else:
        if not args.field:
            raise ValueError("superlevel 대상에는 --field FILE 이 필요합니다")
        g = load_field(Path(args.field))
        if not isinstance(g, SpaceTimeField):
            raise ValueError("superlevel 대상에는 시공간 필드가 필요합니다")
        estimate = superlevel_capacity(
            g, args.level, args.p, args.alpha,
            int(config.get("capacitary.coarsening", 2)), controls,
        )

    witnesses_path = _save_witnesses(estimate, out)
    if sweep is not None:
        print(f"  r 스윕: {emit_report([sweep], out)[0]}")

    bracket_ok = not estimate.duality_violation
    mark = "✓" if bracket_ok else "❌"
    print(f"{mark} primal={estimate.primal_value!r} dual={estimate.dual_value!r} gap={estimate.gap:.4f}")
    if not estimate.converged:
        print("⚠️ 솔버가 반복 상한 안에서 수렴하지 않았습니다")

    write_summary(out, {
        "primal": estimate.primal_value,
        "dual": estimate.dual_value,
        "gap": estimate.gap,
        "converged": estimate.converged,
        "duality_violation": estimate.duality_violation,
        "witnesses_path": str(witnesses_path),
        "passed": bracket_ok,
    })
    return EXIT_OK if bracket_ok else EXIT_PROPERTY_FAILURE
