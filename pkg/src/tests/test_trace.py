"""
추적 부등식 시행과 조건값
"""

import numpy as np
import pytest

from fractrace.capacity.solver import GridSettings
from fractrace.core.errors import RegimeError
from fractrace.experiments.families import FamilyMember, chain, consistency_family
from fractrace.experiments.fitting import rank_correlation
from fractrace.experiments.trace.conditions import (
    ball_lattice,
    compact_candidates,
    condition_values,
    regime_condition,
    wolff_integral,
)
from fractrace.experiments.trace.trials import (
    TraceDomain,
    spectral_trace,
    theorem_consistency,
    trace_matrix,
    trace_ratio,
)
from fractrace.geometry.measure import DiscreteMeasure, measure_of_region

SMALL = GridSettings(cells=24, time_cells=8, subnodes=2)


class TestConditions:
    def test_ball_sup_is_linear_in_mass(self, chain_measure: DiscreteMeasure) -> None:
        base = condition_values("R", chain_measure, 2.0, 3.0, 0.5, with_compact=False)
        heavy = condition_values("R", chain_measure.scaled(3.0), 2.0, 3.0, 0.5, with_compact=False)
        assert heavy.ball_sup == pytest.approx(3.0 * base.ball_sup, rel=1e-12)
        assert base.lattice_size > 0

    def test_ball_sup_under_dilation(self, chain_measure: DiscreteMeasure) -> None:
        # R 변형, n = 1: 반경이 2 배가 되므로 r^{q/p} 만큼 줄어듦
        base = condition_values("R", chain_measure, 2.0, 3.0, 0.5, with_compact=False)
        dilated = condition_values("R", chain_measure.dilated(2.0, 0.5), 2.0, 3.0, 0.5, with_compact=False)
        assert dilated.ball_sup == pytest.approx(base.ball_sup * 2.0**-1.5, rel=1e-12)

    def test_wolff_integral_homogeneity(self, chain_measure: DiscreteMeasure) -> None:
        base = wolff_integral(chain_measure, 3.0, 2.0, 0.5)
        assert base > 0
        assert wolff_integral(chain_measure.scaled(2.0), 3.0, 2.0, 0.5) == pytest.approx(8.0 * base, rel=1e-10)

    def test_wolff_integral_needs_distinct_exponents(self, chain_measure: DiscreteMeasure) -> None:
        with pytest.raises(RegimeError):
            wolff_integral(chain_measure, 2.0, 2.0, 0.5)

    def test_wolff_integral_of_zero(self) -> None:
        assert wolff_integral(DiscreteMeasure.zero(), 3.0, 2.0, 0.5) == 0.0


class TestTrials:
    def test_zero_measure(self) -> None:
        report = trace_ratio("R", DiscreteMeasure.zero(), 2.0, 3.0, 0.5, trials=4, with_conditions=False)
        assert report.trials
        assert np.all(report.ratios == 0.0)

    def test_s_regime(self, chain_measure: DiscreteMeasure) -> None:
        with pytest.raises(RegimeError):
            trace_ratio("S", chain_measure, 2.0, 3.0, 0.5, trials=2)

    def test_matrix_shape(self, chain_measure: DiscreteMeasure) -> None:
        domain = TraceDomain.for_measure(chain_measure, 0.5, "S", cells=32, time_cells=8)
        matrix = trace_matrix(chain_measure, domain, 0.5)
        assert matrix.shape == (len(chain_measure), 9 * 32)
        assert np.all(matrix >= 0)

    def test_spectral_trace_matches_heat_flow(self) -> None:
        # α = 1: exp(−x²) 의 열 흐름은 (1 + 4t)^{−1/2} exp(−x²/(1 + 4t))
        mu = DiscreteMeasure.from_atoms([(1.0, 0.3, 1.0), (2.0, -0.7, 1.0)])
        domain = TraceDomain.for_measure(mu, 1.0, "R", cells=64)
        values = np.exp(-domain.grid.axis() ** 2)
        spectral = spectral_trace(values, domain, mu, 1.0)
        exact = [np.exp(-0.09 / 5.0) / np.sqrt(5.0), np.exp(-0.49 / 9.0) / 3.0]
        np.testing.assert_allclose(spectral, exact, atol=1e-6)
        np.testing.assert_allclose(trace_matrix(mu, domain, 1.0) @ values, exact, atol=1e-6)

    def test_spectral_trace_needs_spatial_domain(self, chain_measure: DiscreteMeasure) -> None:
        domain = TraceDomain.for_measure(chain_measure, 0.5, "S", cells=16, time_cells=4)
        with pytest.raises(ValueError):
            spectral_trace(np.zeros(5 * 16), domain, chain_measure, 0.5)

    def test_odd_cells_rejected(self, chain_measure: DiscreteMeasure) -> None:
        with pytest.raises(ValueError):
            TraceDomain.for_measure(chain_measure, 0.5, "R", cells=33)

    def test_report_fields(self, chain_measure: DiscreteMeasure) -> None:
        domain = TraceDomain.for_measure(chain_measure, 0.5, "R", cells=64)
        report = trace_ratio("R", chain_measure, 2.0, 3.0, 0.5, trials=6, domain=domain)
        assert report.regime == "p<q"
        assert report.max_ratio > 0
        assert report.best_trial
        assert report.verdicts["ratios_finite"] and report.verdicts["condition_finite"]
        assert report.spectral_gap is not None and report.spectral_gap < 0.05
        assert report.verdicts["spectral_agreement"]
        assert report.condition_value == report.conditions.ball_sup


class TestCompactCondition:
    # 무거운 원자 하나와 멀리 떨어진 가벼운 두 원자
    mu = DiscreteMeasure.from_atoms([(1.0, 0.0, 10.0), (1.0, 3.0, 0.1), (1.5, -3.0, 0.1)])

    def test_candidates_cover_prefixes_and_balls(self) -> None:
        balls = ball_lattice(self.mu, 0.5, "R")
        scores = np.array([measure_of_region(self.mu, b) / b.r for b in balls])
        found = compact_candidates(self.mu, 2.0, 0.5, "R", balls, scores)
        labels = [label for label, _, _ in found]
        assert labels[0] == "heaviest[1]"
        assert any(label.startswith("ball(") for label in labels)
        assert len({frozenset(K.contains_atoms(self.mu).nonzero()[0]) for _, K, _ in found[:3]}) == 3
        for _, K, mass in found:
            assert mass == pytest.approx(float(self.mu.weights[K.contains_atoms(self.mu)].sum()))

    def test_single_heavy_atom_wins(self) -> None:
        values = condition_values("R", self.mu, 2.0, 2.0, 0.5, settings=SMALL)
        assert values.compact_best == "heaviest[1]"
        assert values.compact_candidates >= 4
        assert 0.0 < values.compact_sup < np.inf
        assert regime_condition(values, 2.0, 2.0) == values.compact_sup

    def test_linear_in_mass(self, chain_measure: DiscreteMeasure) -> None:
        # 질량 3 배: 후보 순서와 용량이 그대로라 p = q 조건도 3 배
        base = condition_values("R", chain_measure, 2.0, 2.0, 0.5, settings=SMALL)
        heavy = condition_values("R", chain_measure.scaled(3.0), 2.0, 2.0, 0.5, settings=SMALL)
        assert heavy.compact_sup == pytest.approx(3.0 * base.compact_sup, rel=1e-6)
        assert heavy.compact_best == base.compact_best

    def test_not_a_fixed_multiple_of_ball_sup(self, chain_measure: DiscreteMeasure) -> None:
        # 공 하나의 용량으로 나눈 값이라면 두 측도의 비가 같아야 함
        chain_values = condition_values("R", chain_measure, 2.0, 2.0, 0.5, settings=SMALL)
        heavy_values = condition_values("R", self.mu, 2.0, 2.0, 0.5, settings=SMALL)
        chain_ratio = chain_values.compact_sup / chain_values.ball_sup
        heavy_ratio = heavy_values.compact_sup / heavy_values.ball_sup
        assert chain_ratio != pytest.approx(heavy_ratio, rel=1e-3)

    def test_skipped_without_compact(self, chain_measure: DiscreteMeasure) -> None:
        values = condition_values("R", chain_measure, 2.0, 2.0, 0.5, with_compact=False)
        assert np.isnan(values.compact_sup)
        assert values.compact_candidates == 0


class TestConsistency:
    def test_needs_three_members(self, chain_measure: DiscreteMeasure) -> None:
        members = [FamilyMember("dilation", 1.0, chain_measure), FamilyMember("dilation", 2.0, chain_measure)]
        with pytest.raises(ValueError):
            theorem_consistency(members, "R", 2.0, 3.0, 0.5, trials=2, cells=32)


@pytest.mark.slow
def test_consistency_pools_non_homothetic_members() -> None:
    members = consistency_family(
        chain(6, 0.5, seed=3), 0.5,
        dilations=(0.5, 1.0, 2.0), thicknesses=(0.5, 0.25, 0.125), fine_scales=(0.4, 0.2, 0.1),
    )
    result = theorem_consistency(members, "R", 2.0, 3.0, 0.5, trials=4, cells=64)
    assert result.families == ["dilation"] * 3 + ["thin_slab"] * 3 + ["two_scale"] * 3
    assert result.parameters[3:6] == [0.5, 0.25, 0.125]
    # 확대만으로는 정확한 거듭제곱 법칙이라 상관이 자명
    assert result.family_correlations["dilation"] == pytest.approx(1.0)
    assert result.correlation == pytest.approx(rank_correlation(result.conditions, result.ratios))
    assert all(np.isfinite(result.ratios)) and all(np.isfinite(result.conditions))
