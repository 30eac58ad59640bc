"""
Wolff 퍼텐셜과 최대함수의 정확한 값
"""

import numpy as np
import pytest

from fractrace.core.errors import GridCoverageError, RegimeError
from fractrace.experiments.families import chain, dirac, random_measure
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.profile import domination_constant
from fractrace.kernel.spec import KernelSpec
from fractrace.potentials.duality import DualityGrid, wolff_duality_ratio
from fractrace.potentials.dyadic import dyadic_energy, maximal_dyadic, wolff_dyadic
from fractrace.potentials.maximal import maximal_centered, maximal_R, maximal_spacetime
from fractrace.potentials.wolff import wolff_at_atoms, wolff_energy, wolff_quadrature, wolff_R, wolff_S
from fractrace.semigroup.adjoints import adjoint_R

EXACT = 1e-12


class TestWolffOracles:
    def test_center(self) -> None:
        assert wolff_R(dirac(2.0, 0.0), 2.0, (1.0, 0.0), 0.5).value == pytest.approx(1.0, abs=EXACT)

    def test_offset(self) -> None:
        value = wolff_R(dirac(2.0, 0.9), 2.0, (1.0, 0.0), 0.5).value
        assert value == pytest.approx(1.0 / 0.9 - 1.0, abs=EXACT)

    def test_S_variant(self) -> None:
        assert wolff_S(dirac(2.0, 0.0), 1.5, (1.0, 0.0), 0.5).value == pytest.approx(1.0, abs=EXACT)

    def test_truncated(self) -> None:
        # ∫_{1/2}^{3/4} r^{-2} dr
        value = wolff_R(dirac(2.0, 0.0), 2.0, (1.0, 0.0), 0.5, rho=0.75).value
        assert value == pytest.approx(2.0 / 3.0, abs=EXACT)

    def test_zero_measure(self) -> None:
        assert wolff_R(DiscreteMeasure.zero(), 2.0, (1.0, 0.0), 0.5).value == 0.0

    def test_weight_homogeneity(self) -> None:
        # (μ(B)/r)^{p'−1}, p = 3 → 가중치 4 배면 2 배
        base = wolff_R(dirac(2.0, 0.0), 3.0, (1.0, 0.0), 0.5).value
        heavy = wolff_R(dirac(2.0, 0.0, weight=4.0), 3.0, (1.0, 0.0), 0.5).value
        assert heavy == pytest.approx(2.0 * base, rel=1e-12)

    def test_S_regime(self) -> None:
        with pytest.raises(RegimeError):
            wolff_S(dirac(2.0, 0.0), 2.0, (1.0, 0.0), 0.5)

    def test_dirac_has_no_self_potential(self) -> None:
        assert wolff_at_atoms(dirac(1.0, 0.0), 2.0, 0.5).tolist() == [0.0]
        assert wolff_energy(dirac(1.0, 0.0), 2.0, 0.5) == 0.0

    def test_chain_potential_is_positive_before_last(self, chain_measure: DiscreteMeasure) -> None:
        values = wolff_at_atoms(chain_measure, 2.0, 0.5)
        order = np.argsort(chain_measure.times)
        assert np.all(values[order[:-1]] > 0)
        assert values[order[-1]] == 0.0


class TestMaximal:
    def test_maximal_R(self) -> None:
        assert maximal_R(dirac(3.0, 0.0), 0.0, 0.5) == pytest.approx(1.0, abs=EXACT)
        assert maximal_R(dirac(3.0, 1.2), 0.0, 0.5) == pytest.approx(1.0 / 1.2, abs=EXACT)

    def test_maximal_spacetime(self) -> None:
        assert maximal_spacetime(dirac(2.0, 0.0), (1.0, 0.0), 0.5) == pytest.approx(2.0, abs=EXACT)

    def test_centered_average_of_constant(self) -> None:
        mu = chain(5, 0.5, seed=1)
        assert maximal_centered(np.ones(5), mu, (0.1, (0.0,)), 0.5) == pytest.approx(1.0)

    def test_centered_skips_empty_windows(self) -> None:
        mu = dirac(1.0, 0.0)
        assert maximal_centered(np.ones(1), mu, (5.0, (0.0,)), 0.5) == 0.0

    def test_negative_g(self) -> None:
        with pytest.raises(ValueError):
            maximal_centered(-np.ones(1), dirac(1.0, 0.0), (0.5, (0.0,)), 0.5)
        with pytest.raises(ValueError):
            maximal_dyadic(-np.ones(1), dirac(1.0, 0.0), (0.5, (0.0,)), 0.5)

    def test_adjoint_dominates_maximal(self, chain_measure: DiscreteMeasure) -> None:
        spec = KernelSpec(0.5, 1)
        x = np.linspace(-3.0, 3.0, 41)
        c0 = domination_constant(spec)
        adjoint = adjoint_R(chain_measure, x[:, None], spec)
        maximal = np.array([maximal_R(chain_measure, v, 0.5) for v in x])
        assert np.all(adjoint >= c0 * maximal - 1e-12)


class TestDyadic:
    scales = range(-6, 7)

    def test_energy_matches_atom_sum(self, chain_measure: DiscreteMeasure) -> None:
        p = 1.5
        at_atoms = sum(
            w * wolff_dyadic(chain_measure, p, (t, tuple(x)), 0.5, self.scales).value
            for t, x, w in zip(chain_measure.times, chain_measure.points, chain_measure.weights)
        )
        assert dyadic_energy(chain_measure, p, 0.5, self.scales) == pytest.approx(at_atoms, rel=1e-12)

    def test_shifted_energy_is_positive(self, chain_measure: DiscreteMeasure) -> None:
        assert dyadic_energy(chain_measure, 2.0, 0.5, self.scales, shift=(0.25, 0.5)) > 0

    def test_dyadic_maximal_of_constant(self, chain_measure: DiscreteMeasure) -> None:
        t, x = chain_measure.times[0], tuple(chain_measure.points[0])
        value = maximal_dyadic(np.ones(len(chain_measure)), chain_measure, (t, x), 0.5, self.scales)
        assert value == pytest.approx(1.0)

    def test_exponent_checked(self, chain_measure: DiscreteMeasure) -> None:
        with pytest.raises(ValueError):
            dyadic_energy(chain_measure, 1.0, 0.5)


class TestQuadratureCrossCheck:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_R(self, seed: int) -> None:
        mu = random_measure(count=10, seed=seed)
        exact = wolff_R(mu, 2.0, (0.2, 0.3), 0.5).value
        assert wolff_quadrature(mu, 2.0, (0.2, 0.3), 0.5, "R") == pytest.approx(exact, rel=1e-10, abs=1e-10)

    def test_S(self) -> None:
        mu = random_measure(count=10, seed=4)
        exact = wolff_S(mu, 1.5, (0.1, 0.0), 0.5).value
        assert wolff_quadrature(mu, 1.5, (0.1, 0.0), 0.5, "S") == pytest.approx(exact, rel=1e-10, abs=1e-10)

    def test_fractional_alpha(self) -> None:
        mu = random_measure(count=6, seed=5)
        exact = wolff_R(mu, 3.0, (0.0, 0.0), 0.75).value
        assert wolff_quadrature(mu, 3.0, (0.0, 0.0), 0.75) == pytest.approx(exact, rel=1e-10, abs=1e-10)


class TestDualityRatio:
    def test_zero_measure(self) -> None:
        result = wolff_duality_ratio(DiscreteMeasure.zero(1), 2.0, 0.5)
        assert (result.lhs, result.rhs, result.ratio) == (0.0, 0.0, 1.0)

    def test_dirac_has_no_forward_energy(self) -> None:
        result = wolff_duality_ratio(dirac(2.0, 0.0), 2.0, 0.5)
        assert result.rhs == 0.0
        assert result.lhs == pytest.approx(1.0 / (4.0 * np.pi), rel=1e-3)
        assert result.ratio == float("inf")

    def test_chain_ratio_is_finite(self, chain_measure: DiscreteMeasure) -> None:
        result = wolff_duality_ratio(chain_measure, 2.0, 0.5)
        assert result.rhs > 0
        assert 0.0 < result.ratio < float("inf")
        assert result.tail <= 0.05 * result.lhs

    def test_narrow_grid_is_rejected(self) -> None:
        with pytest.raises(GridCoverageError):
            wolff_duality_ratio(dirac(2.0, 0.0), 2.0, 0.5, grid=DualityGrid(margin=0.5))

    def test_s_regime(self, chain_measure: DiscreteMeasure) -> None:
        with pytest.raises(RegimeError):
            wolff_duality_ratio(chain_measure, 2.0, 0.5, "S")
