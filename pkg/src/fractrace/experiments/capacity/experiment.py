"""
CapacityExperiment 구현

용량 괄호의 오라클, 공 인스턴스 간격, 격자 세분, 평형 항등식
"""

from pathlib import Path
from typing import Any, Dict

import numpy as np

from fractrace.capacity.equilibrium import equilibrium_measure
from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox, ball_samples, load_set
from fractrace.capacity.solver import (
    CapacityEstimate,
    CouplingProblem,
    GridSettings,
    SolverControls,
    capacity_dual,
    capacity_primal,
    solve_primal,
)
from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.report import ReportTable
from fractrace.geometry.ball import ParabolicBall

GAP_LIMIT = 0.10
EQUILIBRIUM_SPREAD = 0.05
ORACLE_RTOL = 1e-8

BRACKET_COLUMNS = (
    "case", "variant", "p", "alpha", "samples", "primal", "dual", "gap", "converged", "duality_violation",
)


class CapacityExperiment(BaseExperiment):
    """
    Capacity Experiment

    역할:
    1. 단일 제약 닫힌 형태와 결합 척도 동차성
    2. 포물 공 괄호 (R, S) 의 간격
    3. 격자 세분에서 주값 단조성
    4. S 평형 측도의 세 양 일치
    """

    def execute(self) -> Dict[str, Any]:
        self.controls = SolverControls.from_config(self.config)
        self.settings = GridSettings.from_config(self.config)
        self.time_samples = int(self.config.get("capacity.time_samples", 16))
        self.space_samples = int(self.config.get("capacity.space_samples", 32))
        self.solves = 0
        self.violations = 0

        if self.overrides is not None:
            tables = self.write_tables([self._single_query()])
            return {"tables": tables, **self._duality_summary()}

        tables = [
            self._oracles(),
            self._ball_brackets(),
            self._refinement(),
            self._equilibrium(),
        ]
        return {"tables": self.write_tables(tables), **self._duality_summary()}

    def _tally(self, estimate: CapacityEstimate) -> bool:
        """풀이 하나를 약한 쌍대성 집계에 더하고 위반 여부를 돌려줍니다"""
        self.solves += 1
        if estimate.duality_violation:
            self.violations += 1
        return estimate.duality_violation

    def _duality_summary(self) -> Dict[str, Any]:
        self.check("약한 쌍대성 위반 0건", self.violations == 0, f"({self.violations}/{self.solves})")
        return {"solves": self.solves, "duality_violations": self.violations}

    def _single_query(self) -> ReportTable:
        """CLI 질의 하나: 집합 파일 또는 B_r(0, 0)"""
        cfg = self.overrides
        assert cfg is not None
        source = cfg.params.get("set")
        if source:
            K = load_set(Path(source))
            label = f"set:{Path(source).name}"
        else:
            r = float(cfg.params.get("r", 1.0))
            K = ball_samples(ParabolicBall(0.0, (0.0,), r, cfg.alpha), self.time_samples, self.space_samples)
            label = f"ball(r={r:g})"
        grid = self.settings.grid_for(K, cfg.variant, cfg.alpha)  # type: ignore[arg-type]
        estimate = capacity_dual(cfg.variant, K, cfg.p, cfg.alpha, grid, self.controls)  # type: ignore[arg-type]
        self.logger.log_solver("capacity_dual", estimate.iterations, estimate.converged, estimate.gap)

        table = ReportTable("capacity", BRACKET_COLUMNS)
        table.add(label, cfg.variant, cfg.p, cfg.alpha, len(K), estimate.primal_value,
                  estimate.dual_value, estimate.gap, estimate.converged, self._tally(estimate))
        return table

    def _oracles(self) -> ReportTable:
        table = ReportTable("oracles", ("case", "value", "exact", "rel_error", "pass"))

        K = CompactSetApprox(np.array([1.0]), np.array([[0.0]]), provenance="custom")
        grid = CapacityGrid.for_set(K, "R", 0.5, cells=32)
        estimate = capacity_primal("R", K, 2.0, 0.5, grid, self.controls)
        A = grid.coupling(K, 0.5)[0]
        exact = 1.0 / float(np.sum(grid.volumes() * A**2))
        error = abs(estimate.primal_value - exact) / exact
        table.add("single_constraint", estimate.primal_value, exact, error,
                  self.check("단일 제약 닫힌 형태", error <= ORACLE_RTOL, f"({error:.2e})"))

        ball = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), 4, 8)
        ball_grid = CapacityGrid.for_set(ball, "R", 0.5, cells=48)
        base = CouplingProblem(ball_grid.coupling(ball, 0.5), ball_grid.volumes(), 2.0)
        doubled = CouplingProblem(2.0 * base.A, base.vol, 2.0)
        v1 = solve_primal(base, self.controls).value
        v2 = solve_primal(doubled, self.controls).value
        error = abs(v2 * 4.0 - v1) / v1
        table.add("doubled_coupling", v2, v1 / 4.0, error,
                  self.check("결합 2배 → 목적값 1/4", error <= 1e-6, f"({error:.2e})"))
        return table

    def _ball_brackets(self) -> ReportTable:
        table = ReportTable("balls", BRACKET_COLUMNS)
        cases = [("R", 2.0, 0.5), ("R", 2.0, 0.25), ("S", 1.5, 0.5), ("S", 1.25, 0.5)]
        for variant, p, alpha in cases:
            K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, alpha), self.time_samples, self.space_samples)
            grid = self.settings.grid_for(K, variant, alpha)  # type: ignore[arg-type]
            estimate = capacity_dual(variant, K, p, alpha, grid, self.controls)  # type: ignore[arg-type]
            self.logger.log_solver(f"ball {variant} p={p} α={alpha}", estimate.iterations,
                                   estimate.converged, estimate.gap)
            table.add("ball(r=1)", variant, p, alpha, len(K), estimate.primal_value,
                      estimate.dual_value, estimate.gap, estimate.converged, self._tally(estimate))
            self.check(f"{variant} p={p} α={alpha} 간격 ≤ 10%", estimate.gap <= GAP_LIMIT,
                       f"({estimate.gap:.4f})")
        return table

    def _refinement(self) -> ReportTable:
        """
        세분 격자는 구적점을 유지하므로 주값이 늘지 않습니다.
        쌍대값은 단조가 아니어서 약한 쌍대성 집계에만 더합니다.
        """
        table = ReportTable("refinement", ("level", "cells", "primal", "dual", "gap", "duality_violation"))
        K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), 8, 16)
        grid = CapacityGrid.for_set(K, "R", 0.5, cells=24, subnodes=4)
        previous = np.inf
        for level in range(3):
            estimate = capacity_dual("R", K, 2.0, 0.5, grid, self.controls)
            table.add(level, grid.cells, estimate.primal_value, estimate.dual_value, estimate.gap,
                      self._tally(estimate))
            self.check(f"세분 {level}: 주값 비증가",
                       estimate.primal_value <= previous * (1.0 + 1e-6))
            previous = estimate.primal_value
            if level < 2:
                grid = grid.refined()
        return table

    def _equilibrium(self) -> ReportTable:
        table = ReportTable("equilibrium", ("p", "alpha", "mass", "energy", "pairing", "spread"))
        for p in (1.25, 1.5):
            K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), self.time_samples, self.space_samples)
            grid = self.settings.grid_for(K, "S", 0.5)
            result = equilibrium_measure(K, p, 0.5, grid, self.controls)
            table.add(p, 0.5, result.mass, result.energy, result.pairing, result.spread)
            self.check(f"평형 항등식 p={p} (≤ 5%)", result.spread <= EQUILIBRIUM_SPREAD,
                       f"({result.spread:.4f})")
        return table
