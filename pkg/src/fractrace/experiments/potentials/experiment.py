"""
PotentialsExperiment 구현

정확한 퍼텐셜 오라클, 최대함수 지배, Wolff 쌍대성 비율
"""

from typing import Any, Dict, List

import numpy as np

from fractrace.experiments.base import BaseExperiment, dyadic_scales
from fractrace.experiments.families import chain, dirac, random_measure
from fractrace.experiments.report import ReportTable
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.profile import domination_constant
from fractrace.kernel.spec import KernelSpec
from fractrace.potentials.duality import DualityGrid, wolff_duality_ratio
from fractrace.potentials.dyadic import dyadic_energy, wolff_dyadic
from fractrace.potentials.maximal import maximal_R, maximal_R_many, maximal_spacetime
from fractrace.potentials.wolff import wolff_energy, wolff_quadrature, wolff_R, wolff_S
from fractrace.semigroup.adjoints import adjoint_R

ORACLE_TOL = 1e-12
BRACKET_SPREAD = 20.0
REFINE_DRIFT = 0.10
QUADRATURE_TOL = 1e-10
HOMOGENEITY_RTOL = 1e-12


class PotentialsExperiment(BaseExperiment):
    """
    Potentials Experiment

    역할:
    1. Dirac 측도의 해석적 반경 적분 오라클
    2. R_α^*μ ≥ c₀ M_αμ 점별 지배와 노름 비율 범위
    3. 사슬 측도 위 Wolff 쌍대성 비율의 괄호와 격자 세분 안정성
    4. 난수 측도에서 닫힌 조각 적분 대 적응 구적
    5. 동차성과 단조성
    6. dyadic Wolff 에너지 (이동 family 포함)
    """

    def execute(self) -> Dict[str, Any]:
        alpha = self.overrides.alpha if self.overrides else float(self.config.get("trace.alpha", 0.5))
        count = int(self.config.get("potentials.measures", 50))
        exponents = [float(p) for p in self.config.get("potentials.exponents", [1.5, 2.0, 3.0])]
        grid = DualityGrid(
            resolution=int(self.config.get("potentials.duality_resolution", 16)),
            margin=float(self.config.get("potentials.duality_margin", 12.0)),
            time_cells=int(self.config.get("potentials.duality_time_cells", 64)),
            coverage_tol=float(self.config.get("potentials.coverage_tol", 0.05)),
        )
        measures = [chain(8, alpha, self.seed + k) for k in range(count)]

        oracle = self._oracles()
        domination, c0, norm_bracket = self._domination(measures, alpha, exponents)
        duality = self._duality(measures, alpha, exponents, grid)
        exactness = self._exactness(alpha, int(self.config.get("potentials.exactness_measures", 100)))
        homogeneity = self._homogeneity(measures, alpha, exponents)
        dyadic = self._dyadic(measures, alpha, exponents, dyadic_scales(self.config))

        paths = self.write_tables([oracle, domination, duality, exactness, homogeneity, dyadic])
        ratios = np.array([row[4] for row in duality.rows])
        return {
            "tables": paths,
            "alpha": alpha,
            "domination_constant": c0,
            "norm_ratio_bracket": norm_bracket,
            "duality_bracket": [float(ratios.min()), float(ratios.max())] if ratios.size else [],
        }

    def _oracles(self) -> ReportTable:
        """해석적 값이 알려진 Dirac 사례"""
        table = ReportTable("oracles", ("case", "value", "exact", "abs_error", "pass"))
        near = dirac(2.0, 0.0)
        far = dirac(2.0, 0.9)
        cases = [
            ("wolff_R_center", wolff_R(near, 2.0, (1.0, 0.0), 0.5).value, 1.0),
            ("wolff_R_offset", wolff_R(far, 2.0, (1.0, 0.0), 0.5).value, 1.0 / 0.9 - 1.0),
            ("wolff_S_center", wolff_S(near, 1.5, (1.0, 0.0), 0.5).value, 1.0),
            ("maximal_R_center", maximal_R(dirac(3.0, 0.0), 0.0, 0.5), 1.0),
            ("maximal_R_offset", maximal_R(dirac(3.0, 1.2), 0.0, 0.5), 1.0 / 1.2),
            ("maximal_spacetime", maximal_spacetime(near, (1.0, 0.0), 0.5), 2.0),
            ("wolff_R_zero", wolff_R(DiscreteMeasure.zero(), 2.0, (1.0, 0.0), 0.5).value, 0.0),
        ]
        for name, value, exact in cases:
            error = abs(value - exact)
            ok = self.check(f"oracle {name}", error <= ORACLE_TOL, f"({value!r} vs {exact!r})")
            table.add(name, value, exact, error, ok)
        return table

    def _domination(
        self,
        measures: List[DiscreteMeasure],
        alpha: float,
        exponents: List[float],
    ) -> tuple:
        """점별 지배와 ‖M_αμ‖_p / ‖R_α^*μ‖_p 범위 (격자 리만 합)"""
        spec = KernelSpec(alpha, 1)
        c0 = domination_constant(spec)
        table = ReportTable(
            "domination", ("seed", "p", "min_slack", "norm_ratio", "pointwise_ok")
        )
        x = np.linspace(-4.0, 4.0, 81)
        spacing = x[1] - x[0]
        norm_ratios = []
        all_ok = True
        for k, mu in enumerate(measures):
            adjoint = adjoint_R(mu, x[:, None], spec)
            maximal = maximal_R_many(mu, x[:, None], alpha)
            slack = adjoint - c0 * maximal
            ok = bool(np.all(slack >= -1e-12 * np.maximum(adjoint, 1.0)))
            all_ok &= ok
            for p in exponents:
                top = float(np.sum(maximal**p) * spacing) ** (1.0 / p)
                bottom = float(np.sum(adjoint**p) * spacing) ** (1.0 / p)
                ratio = top / bottom if bottom > 0 else 0.0
                norm_ratios.append(ratio)
                table.add(self.seed + k, p, float(slack.min()), ratio, ok)

        self.check("R_α^*μ ≥ c₀ M_αμ", all_ok, f"(c₀={c0:.6g})")
        bracket = [min(norm_ratios), max(norm_ratios)] if norm_ratios else []
        self.check(
            "노름 비율 범위 유한",
            bool(bracket) and bracket[0] > 0 and np.isfinite(bracket[1]),
            f"{bracket}",
        )
        return table, c0, bracket

    def _duality(
        self,
        measures: List[DiscreteMeasure],
        alpha: float,
        exponents: List[float],
        grid: DualityGrid,
    ) -> ReportTable:
        table = ReportTable(
            "duality", ("seed", "p", "lhs", "rhs", "ratio", "refined_ratio", "drift")
        )
        fine = grid.refined()
        for k, mu in enumerate(measures):
            for p in exponents:
                base = wolff_duality_ratio(mu, p, alpha, "R", grid)
                refined = wolff_duality_ratio(mu, p, alpha, "R", fine)
                drift = abs(refined.ratio / base.ratio - 1.0)
                table.add(self.seed + k, p, base.lhs, base.rhs, base.ratio, refined.ratio, drift)

        ratios = np.array([row[4] for row in table.rows])
        drifts = np.array([row[6] for row in table.rows])
        if ratios.size:
            spread = float(ratios.max() / ratios.min())
            self.check("쌍대성 비율 괄호 c₂/c₁ ≤ 20", spread <= BRACKET_SPREAD, f"({spread:.3f})")
            self.check("격자 세분 변화 < 10%", float(drifts.max()) < REFINE_DRIFT, f"({drifts.max():.4f})")
        return table

    def _exactness(self, alpha: float, count: int) -> ReportTable:
        """원자 ≤ 20 개의 난수 측도에서 wolff_R, wolff_S 대 적응 구적"""
        table = ReportTable("exactness", ("seed", "variant", "t", "x", "exact", "quadrature", "abs_error"))
        s_p = 1.0 + 0.5 / (2.0 * alpha)
        worst = 0.0
        for k in range(count):
            seed = self.seed + k
            mu = random_measure(count=1 + seed % 20, seed=seed)
            rng = np.random.default_rng(seed)
            t, x = float(rng.uniform(0.0, 0.5)), float(rng.uniform(-1.0, 1.0))
            for variant, p in (("R", 2.0), ("S", s_p)):
                func = wolff_R if variant == "R" else wolff_S
                exact = func(mu, p, (t, x), alpha).value
                numeric = wolff_quadrature(mu, p, (t, x), alpha, variant)  # type: ignore[arg-type]
                error = abs(exact - numeric)
                worst = max(worst, error / max(1.0, abs(exact)))
                table.add(seed, variant, t, x, exact, numeric, error)

        self.check("조각 적분 = 적응 구적", worst <= QUADRATURE_TOL, f"(최대 상대 오차 {worst:.2e})")
        return table

    def _homogeneity(
        self,
        measures: List[DiscreteMeasure],
        alpha: float,
        exponents: List[float],
    ) -> ReportTable:
        """P(cμ) = c^{p'−1} P(μ), M(cμ) = c M(μ), μ ≤ ν 이면 P μ ≤ P ν"""
        table = ReportTable("homogeneity", ("seed", "p", "wolff_rel_error", "maximal_rel_error", "monotone"))
        factor = 3.0
        worst = 0.0
        all_monotone = True
        for k, mu in enumerate(measures):
            t, x = 0.25, float(mu.points[0, 0])
            extra = random_measure(count=4, seed=self.seed + k, t_range=(0.5, 4.0), x_range=(-1.0, 1.0))
            larger = mu.union(extra)
            base_max = maximal_spacetime(mu, (t, x), alpha)
            scaled_max = maximal_spacetime(mu.scaled(factor), (t, x), alpha)
            max_error = abs(scaled_max - factor * base_max) / max(factor * base_max, 1e-300)
            for p in exponents:
                base = wolff_R(mu, p, (t, x), alpha).value
                scaled = wolff_R(mu.scaled(factor), p, (t, x), alpha).value
                expected = factor ** (1.0 / (p - 1.0)) * base
                error = abs(scaled - expected) / max(expected, 1e-300)
                monotone = (
                    wolff_R(larger, p, (t, x), alpha).value >= base * (1.0 - HOMOGENEITY_RTOL)
                    and maximal_spacetime(larger, (t, x), alpha) >= base_max * (1.0 - HOMOGENEITY_RTOL)
                )
                worst = max(worst, error, max_error)
                all_monotone &= monotone
                table.add(self.seed + k, p, error, max_error, monotone)

        self.check("동차성", worst <= HOMOGENEITY_RTOL, f"(최대 상대 오차 {worst:.2e})")
        self.check("단조성", all_monotone)
        return table

    def _dyadic(
        self,
        measures: List[DiscreteMeasure],
        alpha: float,
        exponents: List[float],
        scales: range,
    ) -> ReportTable:
        """연속 에너지 ∫ P^R μ dμ 옆에 dyadic 에너지와 이동 family 에너지, 상단 꼬리 한계"""
        table = ReportTable(
            "dyadic",
            ("seed", "p", "wolff_energy", "dyadic_energy", "shifted_energy", "ratio", "tail_bound"),
        )
        shift = (1.0 / 3.0, 1.0 / 3.0)
        finite = True
        for k, mu in enumerate(measures):
            t0, x0 = float(mu.times[0]), tuple(mu.points[0])
            for p in exponents:
                continuous = wolff_energy(mu, p, alpha)
                dyadic = dyadic_energy(mu, p, alpha, scales)
                shifted = dyadic_energy(mu, p, alpha, scales, shift=shift)
                tail = wolff_dyadic(mu, p, (t0, x0), alpha, scales).tail_bound
                ratio = continuous / dyadic if dyadic > 0 else float("nan")
                finite &= bool(np.isfinite(ratio) and ratio > 0)
                table.add(self.seed + k, p, continuous, dyadic, shifted, ratio, tail)

        self.check("dyadic 에너지 비율 유한", finite, f"(척도 {scales.start}..{scales.stop - 1})")
        return table
