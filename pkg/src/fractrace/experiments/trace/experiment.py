"""
TraceExperiment 구현

세 영역의 추적 비율, 조건값, 측도 family 위 정리 일관성, 문턱 조건
"""

import math
from typing import Any, Dict, List, Tuple

import numpy as np

from fractrace.capacity.solver import DUALITY_RTOL, GridSettings, SolverControls
from fractrace.experiments.base import BaseExperiment
from fractrace.experiments.families import build_measure, consistency_family, dirac, lebesgue_ball_check
from fractrace.experiments.report import ReportTable
from fractrace.experiments.trace.conditions import threshold_conditions
from fractrace.experiments.trace.trials import TraceDomain, TraceReport, theorem_consistency, trace_ratio
from fractrace.geometry.measure import DiscreteMeasure

CORRELATION_FLOOR = 0.9

TRIAL_COLUMNS = ("variant", "p", "q", "trial", "lhs", "rhs", "ratio")
CONDITION_COLUMNS = (
    "variant", "p", "q", "regime", "max_ratio", "best_trial",
    "ball_sup", "compact_sup", "compact_best", "wolff_integral", "condition_value", "spectral_gap",
)
CONSISTENCY_COLUMNS = (
    "variant", "p", "q", "family", "parameter", "max_ratio", "condition_value",
    "family_correlation", "correlation",
)
THRESHOLD_COLUMNS = (
    "variant", "p", "q", "level", "lambda", "capacity_lower", "capacity_upper", "value_lower", "value_upper",
)


class TraceExperiment(BaseExperiment):
    """
    Trace Experiment

    역할:
    1. 내장 측도 위 추적 비율과 영역 조건값
    2. 확대, 얇은 slab, 두 척도 family 를 합친 조건값과 비율의 순위 상관 (≥ 0.9)
    3. 질량 문턱 λ 사다리 위 C(μ; λ) 조건 괄호
    4. Dirac p > q: Wolff 적분 유한, 비율 유한
    5. 영측도 → 비율 0, 르베그 공 부피 확인
    """

    def execute(self) -> Dict[str, Any]:
        self.settings = GridSettings.from_config(self.config)
        self.controls = SolverControls.from_config(self.config)
        self.domain_params = {
            "cells": int(self.config.get("trace.cells", 128)),
            "time_cells": int(self.config.get("trace.time_cells", 48)),
            "extent": float(self.config.get("trace.extent", 4.0)),
        }
        trials = ReportTable("trials", TRIAL_COLUMNS)
        conditions = ReportTable("conditions", CONDITION_COLUMNS)

        if self.overrides is not None:
            cfg = self.overrides
            mu = build_measure(cfg.measure, **cfg.params.get("measure_params", {}))
            q = float(cfg.q if cfg.q is not None else cfg.p)
            report = self._trace(mu, cfg.variant, cfg.p, q, cfg.alpha, cfg.trials)
            self._record(report, trials, conditions)
            return {"tables": self.write_tables([trials, conditions]), "max_ratio": report.max_ratio}

        alpha = float(self.config.get("trace.alpha", 0.5))
        count = int(self.config.get("trace.trials", 24))
        source = str(self.config.get("trace.measure", "slab"))
        base = build_measure(source, **dict(self.config.get("trace.measure_params", {}) or {}))
        members = consistency_family(
            base,
            alpha,
            dilations=[float(f) for f in self.config.get("trace.dilations", [0.5, 0.75, 1.0, 1.5, 2.0])],
            thicknesses=[float(h) for h in self.config.get("trace.thicknesses", [0.5, 0.25, 0.125, 0.0625])],
            fine_scales=[float(f) for f in self.config.get("trace.fine_scales", [0.4, 0.2, 0.1, 0.05])],
        )
        levels = int(self.config.get("trace.threshold_levels", 4))

        consistency = ReportTable("consistency", CONSISTENCY_COLUMNS)
        threshold = ReportTable("threshold", THRESHOLD_COLUMNS)
        correlations = {}
        for variant, p, q in self._regimes():
            report = self._trace(base, variant, p, q, alpha, count)
            self._record(report, trials, conditions)
            self._threshold(base, variant, p, q, alpha, levels, threshold)

            result = theorem_consistency(
                members, variant, p, q, alpha, count, self.seed,
                settings=self.settings, controls=self.controls, **self.domain_params,
            )
            for row in zip(result.families, result.parameters, result.ratios, result.conditions):
                family, parameter, ratio, cond = row
                consistency.add(variant, p, q, family, parameter, ratio, cond,
                                result.family_correlations.get(family, math.nan), result.correlation)
            correlations[f"{variant}:{p}:{q}"] = {"pooled": result.correlation, **result.family_correlations}
            self.check(
                f"{variant} p={p} q={q} 순위 상관 ≥ {CORRELATION_FLOOR}",
                result.correlation >= CORRELATION_FLOOR,
                f"({result.correlation:.4f}, {len(members)}개 측도)",
            )

        self._dirac_case(alpha, count, trials, conditions)
        self._zero_case(alpha)
        lebesgue = lebesgue_ball_check(alpha)
        self.check("르베그 공 부피", lebesgue["relative_error"] <= 1e-9, f"({lebesgue['relative_error']:.2e})")

        return {
            "tables": self.write_tables([trials, conditions, consistency, threshold]),
            "correlations": correlations,
            "lebesgue_ball": lebesgue,
            "measure": f"built-in {source} (our choice)",
        }

    def _threshold(
        self,
        mu: DiscreteMeasure,
        variant: str,
        p: float,
        q: float,
        alpha: float,
        levels: int,
        table: ReportTable,
    ) -> None:
        """λ_k = 2^{-k}‖μ‖ 사다리 위 C(μ; λ) 조건의 휴리스틱 괄호"""
        if mu.dim != 1:
            self.logger.warning(f"문턱 조건은 n = 1 측도만 지원합니다 (n = {mu.dim}); 건너뜁니다")
            return
        result = threshold_conditions(
            mu, p, q, alpha, variant, levels, self.settings, self.controls  # type: ignore[arg-type]
        )
        for k, (lam, lo, hi) in enumerate(zip(result.levels, result.capacity_lower, result.capacity_upper)):
            table.add(variant, p, q, k, lam, lo, hi, result.value_lower, result.value_upper)
        self.check(
            f"{variant} p={p} q={q} 문턱 조건 괄호 순서",
            math.isfinite(result.value_upper)
            and result.value_lower <= result.value_upper * (1.0 + DUALITY_RTOL),
            f"([{result.value_lower:.4g}, {result.value_upper:.4g}])",
        )

    def _regimes(self) -> List[Tuple[str, float, float]]:
        cases = []
        for variant in self.config.get("trace.variants", ["R", "S"]):
            key = "trace.regimes" if variant == "R" else "trace.s_regimes"
            cases += [(variant, float(p), float(q)) for p, q in self.config.get(key, [])]
        return cases

    def _trace(
        self,
        mu: DiscreteMeasure,
        variant: str,
        p: float,
        q: float,
        alpha: float,
        trials: int,
    ) -> TraceReport:
        domain = TraceDomain.for_measure(mu, alpha, variant, **self.domain_params)  # type: ignore[arg-type]
        report = trace_ratio(
            variant, mu, p, q, alpha, trials, self.seed, domain,  # type: ignore[arg-type]
            settings=self.settings, controls=self.controls,
        )
        self.logger.info(
            f"{variant} p={p} q={q}: max={report.max_ratio:.6g} ({report.best_trial}), "
            f"condition={report.condition_value}"
        )
        self.check(f"{variant} p={p} q={q} 비율 유한", report.verdicts["ratios_finite"])
        if report.spectral_gap is not None:
            self.check(
                f"{variant} p={p} q={q} 직접 구적 = apply_R",
                report.verdicts["spectral_agreement"],
                f"({report.spectral_gap:.2e})",
            )
        return report

    def _record(self, report: TraceReport, trials: ReportTable, conditions: ReportTable) -> None:
        for trial in report.trials:
            trials.add(report.variant, report.p, report.q, trial.label, trial.lhs, trial.rhs, trial.ratio)
        values = report.conditions
        conditions.add(
            report.variant, report.p, report.q, report.regime, report.max_ratio, report.best_trial,
            values.ball_sup if values else math.nan,
            values.compact_sup if values else math.nan,
            values.compact_best if values else "",
            values.wolff_integral if values and values.wolff_integral is not None else math.nan,
            report.condition_value if report.condition_value is not None else math.nan,
            report.spectral_gap if report.spectral_gap is not None else math.nan,
        )

    def _dirac_case(self, alpha: float, count: int, trials: ReportTable, conditions: ReportTable) -> None:
        """Dirac, p > q: 정확한 Wolff 적분이 유한하고 모든 비율이 유한"""
        report = self._trace(dirac(1.0, 0.0), "R", 3.0, 2.0, alpha, max(count, 100))
        self._record(report, trials, conditions)
        self.check(
            "Dirac p>q Wolff 적분 유한",
            report.condition_value is not None and math.isfinite(report.condition_value),
        )

    def _zero_case(self, alpha: float) -> None:
        report = trace_ratio("R", DiscreteMeasure.zero(), 2.0, 2.0, alpha, 8, self.seed, with_conditions=False)
        self.check("영측도 → 비율 0", bool(np.all(report.ratios == 0.0)))
