"""
용량 괄호 솔버
"""

import numpy as np
import pytest

from fractrace.capacity.equilibrium import equilibrium_measure
from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox, atoms_set, ball_samples
from fractrace.capacity.solver import (
    DUALITY_RTOL,
    CapacityEstimate,
    CouplingProblem,
    GridSettings,
    ball_capacity,
    build_problem,
    capacity_dual,
    capacity_primal,
    solve_dual,
    solve_primal,
)
from fractrace.capacity.superlevel import superlevel_capacity
from fractrace.capacity.threshold import mass_threshold_capacity
from fractrace.core.errors import InfeasibleCapacityError, RegimeError
from fractrace.experiments.capacitary.sweep import capacitary_suite, source_field
from fractrace.geometry.ball import ParabolicBall
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.semigroup.fields import SpatialGrid, TimeAxis

SMALL = GridSettings(cells=24, time_cells=8, subnodes=2)


@pytest.fixture
def single_point() -> CompactSetApprox:
    return CompactSetApprox(np.array([1.0]), np.array([[0.0]]), provenance="custom")


class TestSingleConstraint:
    def test_closed_form(self, single_point: CompactSetApprox) -> None:
        grid = CapacityGrid.for_set(single_point, "R", 0.5, cells=32)
        problem = build_problem("R", single_point, 2.0, 0.5, grid)
        expected = 1.0 / float(np.sum(problem.vol * problem.A[0] ** 2))
        estimate = capacity_primal("R", single_point, 2.0, 0.5, grid, problem=problem)
        assert estimate.primal_value == pytest.approx(expected, rel=1e-8)
        assert estimate.dual_value == pytest.approx(expected, rel=1e-8)
        assert not estimate.duality_violation

    def test_doubled_coupling(self, single_point: CompactSetApprox) -> None:
        grid = CapacityGrid.for_set(single_point, "R", 0.5, cells=32)
        base = build_problem("R", single_point, 2.0, 0.5, grid)
        doubled = CouplingProblem(A=2.0 * base.A, vol=base.vol, p=2.0)
        assert solve_primal(doubled).value == pytest.approx(solve_primal(base).value / 4.0, rel=1e-8)

    def test_variant_mismatch(self, single_point: CompactSetApprox) -> None:
        grid = CapacityGrid.for_set(single_point, "R", 0.5, cells=8)
        with pytest.raises(ValueError):
            build_problem("S", single_point, 1.5, 0.5, grid)

    def test_infeasible_row(self, single_point: CompactSetApprox) -> None:
        # 부분노드 시간 5 가 표본 시간 1 보다 늦어 결합이 전부 0
        grid = CapacityGrid("S", -1.0, 1.0, 4, horizon=10.0, time_cells=1, subnodes=1)
        with pytest.raises(InfeasibleCapacityError):
            grid.coupling(single_point, 0.5)


class TestBallCapacity:
    def test_bracket_and_witnesses(self) -> None:
        estimate = ball_capacity("R", 0.5, 2.0, 0.5, SMALL, time_samples=4, space_samples=8)
        assert estimate.dual_value > 0.0
        assert not estimate.duality_violation
        assert np.all(estimate.witness_h >= 0)
        assert np.all(estimate.witness_mu.weights >= 0)
        assert estimate.primal_residual <= 1e-6

    def test_s_regime(self) -> None:
        with pytest.raises(RegimeError):
            ball_capacity("S", 0.5, 2.0, 0.5, SMALL, time_samples=4, space_samples=8)

    def test_sample_layout(self) -> None:
        K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), 4, 8)
        assert len(K) == 32
        assert K.times.min() > 1.0 and K.times.max() < 2.0
        assert np.all(np.abs(K.points) < 1.0)


class TestWeakDuality:
    def test_dual_is_reported_unclamped(self) -> None:
        K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), 4, 8)
        grid = SMALL.grid_for(K, "R", 0.5)
        problem = build_problem("R", K, 2.0, 0.5, grid)
        primal = solve_primal(problem)
        dual = solve_dual(problem, warm_start=primal.lam)
        estimate = capacity_dual("R", K, 2.0, 0.5, grid, problem=problem)
        assert estimate.dual_value == dual.value
        assert estimate.primal_value == primal.value

    def test_violation_flag(self) -> None:
        def estimate(dual: float) -> CapacityEstimate:
            return CapacityEstimate(1.0, dual, np.zeros(1), DiscreteMeasure.zero(1), 0, True)

        assert not estimate(1.0).duality_violation
        assert not estimate(1.0 + 1e-12).duality_violation
        assert estimate(1.0 + 1e-3).duality_violation
        assert estimate(1.0 + 1e-3).gap < 0


class TestMonotonicity:
    K = ball_samples(ParabolicBall(0.0, (0.0,), 1.0, 0.5), 4, 8)

    def test_subset_capacity_is_smaller(self) -> None:
        grid = SMALL.grid_for(self.K, "R", 0.5)
        full = capacity_primal("R", self.K, 2.0, 0.5, grid)
        mask = np.arange(len(self.K)) % 2 == 0
        subset = CompactSetApprox(self.K.times[mask], self.K.points[mask], provenance="custom")
        # 큰 집합의 증인은 부분집합에서도 실행 가능
        part = capacity_primal("R", subset, 2.0, 0.5, grid, candidates=[full.witness_h])
        assert part.primal_value <= full.primal_value * (1.0 + 1e-9)
        assert part.dual_value <= full.primal_value * (1.0 + DUALITY_RTOL)

    def test_refinement_settles(self) -> None:
        grid = CapacityGrid.for_set(self.K, "R", 0.5, cells=24, subnodes=4)
        coarse = capacity_dual("R", self.K, 2.0, 0.5, grid)
        fine_grid = grid.refined()
        # 거친 증인을 자식 셀로 복제하면 같은 목적값의 실행 가능한 해
        fine = capacity_dual("R", self.K, 2.0, 0.5, fine_grid, candidates=[np.repeat(coarse.witness_h, 2)])
        assert fine_grid.cells == 48
        assert fine.primal_value <= coarse.primal_value * (1.0 + 1e-9)
        assert fine.dual_value <= coarse.primal_value * (1.0 + DUALITY_RTOL)
        assert abs(fine.primal_value - coarse.primal_value) / coarse.primal_value <= 0.25
        assert not coarse.duality_violation and not fine.duality_violation


class TestSuperlevel:
    grid = SpatialGrid(2.0, 0.25, 1)
    time = TimeAxis(2.0, 8)

    def test_empty_level(self) -> None:
        g = source_field(0, self.grid, self.time)
        estimate = superlevel_capacity(g, 1e6, 1.5, 0.5, coarsening=2)
        assert estimate.primal_value == 0.0
        assert estimate.dual_value == 0.0

    def test_regime(self) -> None:
        g = source_field(0, self.grid, self.time)
        with pytest.raises(RegimeError):
            superlevel_capacity(g, 1.0, 2.0, 0.5, coarsening=2)

    def test_level_must_be_positive(self) -> None:
        g = source_field(0, self.grid, self.time)
        with pytest.raises(ValueError):
            superlevel_capacity(g, 0.0, 1.5, 0.5, coarsening=2)

    def test_weak_type_inequality(self) -> None:
        result = capacitary_suite(0.5, 1.5, seeds=1, levels=3, half_width=2.0, time_steps=8)
        assert result.rows
        assert result.weak_holds
        assert np.isfinite(result.max_strong)


class TestThreshold:
    mu = DiscreteMeasure.from_atoms([(1.0, 0.0, 1.0), (1.5, 0.2, 2.0), (2.5, -0.1, 0.5)])

    def test_bracket_order(self) -> None:
        bracket = mass_threshold_capacity(
            self.mu, 2.0, "R", 2.0, 0.5, settings=SMALL, families=("heaviest", "wolff")
        )
        assert bracket.heuristic
        assert bracket.lower <= bracket.upper * (1.0 + DUALITY_RTOL)
        assert all(c.mass >= 2.0 for c in bracket.candidates)

    def test_level_above_mass(self) -> None:
        with pytest.raises(ValueError):
            mass_threshold_capacity(self.mu, 10.0, "R", 2.0, 0.5, settings=SMALL)

    def test_atoms_set_membership(self) -> None:
        K = atoms_set(self.mu, np.array([True, False, True]))
        assert K.contains_atoms(self.mu).tolist() == [True, False, True]


@pytest.mark.slow
def test_equilibrium_identities() -> None:
    K = ball_samples(ParabolicBall(0.0, (0.0,), 0.5, 0.5), 4, 8)
    grid = SMALL.grid_for(K, "S", 0.5)
    result = equilibrium_measure(K, 1.5, 0.5, grid)
    assert result.mass > 0
    assert result.spread <= 0.1
