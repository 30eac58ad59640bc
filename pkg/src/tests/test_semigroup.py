"""
반군 작용소, 지수, 노름, 필드 입출력
"""

import math
from pathlib import Path

import numpy as np
import pytest
from scipy.integrate import trapezoid

from fractrace.core.errors import AliasingError, RegimeError
from fractrace.experiments.families import dirac
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.kernel.spec import KernelSpec
from fractrace.semigroup.adjoints import adjoint_R, adjoint_S, adjoint_S_field
from fractrace.semigroup.exponents import (
    ExponentConfig,
    conjugate,
    regime,
    s_critical,
    strichartz_exponent,
)
from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid, TimeAxis
from fractrace.semigroup.io import load_field, save_field
from fractrace.semigroup.norms import norm_lp, norm_lq_mu
from fractrace.semigroup.operators import (
    apply_R,
    apply_S,
    check_support,
    fractional_laplacian,
    pde_residual,
)


class TestExponents:
    def test_strichartz_closed_form(self) -> None:
        assert strichartz_exponent(1, 0.5, 1.5) == 6.0

    def test_strichartz_endpoint(self) -> None:
        assert s_critical(1, 0.5) == 2.0
        with pytest.raises(RegimeError):
            strichartz_exponent(1, 0.5, 2.0)

    def test_conjugate(self) -> None:
        assert conjugate(2.0) == 2.0
        assert conjugate(3.0) == pytest.approx(1.5)
        with pytest.raises(ValueError):
            conjugate(1.0)

    def test_regime(self) -> None:
        assert regime(2.0, 3.0) == "p<q"
        assert regime(2.0, 2.0) == "p=q"
        assert regime(3.0, 2.0) == "p>q"

    def test_exponent_config(self) -> None:
        exponents = ExponentConfig(2.0)
        assert exponents.q == 2.0
        assert exponents.p_prime == 2.0
        with pytest.raises(RegimeError):
            exponents.require_distinct()
        with pytest.raises(ValueError):
            ExponentConfig(0.5)
        with pytest.raises(RegimeError):
            ExponentConfig(1.5).require_s_regime(1, 0.75)


class TestFields:
    def test_grid_requires_integer_ratio(self) -> None:
        with pytest.raises(ValueError):
            SpatialGrid(1.0, 0.3)

    def test_field_shape_checked(self, small_grid: SpatialGrid) -> None:
        with pytest.raises(ValueError):
            SpatialField(small_grid, np.zeros(3))

    def test_refined(self, small_grid: SpatialGrid, short_time: TimeAxis) -> None:
        assert small_grid.refined().nodes_per_axis == 2 * small_grid.nodes_per_axis
        assert short_time.refined().dt == pytest.approx(short_time.dt / 2.0)


class TestApplyR:
    grid = SpatialGrid(16.0, 0.125, 1)

    def test_zero_time_is_identity(self) -> None:
        f = SpatialField.from_function(self.grid, lambda x: np.exp(-x * x))
        assert apply_R(f, 0.0, KernelSpec(0.5)) is f

    def test_mass_is_preserved(self) -> None:
        f = SpatialField.from_function(self.grid, lambda x: np.exp(-x * x))
        out = apply_R(f, 1.5, KernelSpec(0.5))
        assert out.values.sum() == pytest.approx(f.values.sum(), rel=1e-12)

    def test_heat_flow_of_gaussian(self) -> None:
        f = SpatialField.from_function(self.grid, lambda x: np.exp(-x * x) / math.sqrt(math.pi))
        out = apply_R(f, 0.5, KernelSpec(1.0))
        x = self.grid.axis()
        exact = np.exp(-x * x / 3.0) / math.sqrt(3.0 * math.pi)
        np.testing.assert_allclose(out.values, exact, atol=1e-10)

    def test_outer_support_is_rejected(self) -> None:
        f = SpatialField.from_function(self.grid, lambda x: (np.abs(x) > 10.0).astype(float))
        with pytest.raises(AliasingError):
            apply_R(f, 1.0, KernelSpec(0.5))
        apply_R(f, 1.0, KernelSpec(0.5), periodic=True)

    def test_negative_time(self) -> None:
        with pytest.raises(ValueError):
            apply_R(SpatialField.zeros(self.grid), -1.0, KernelSpec(0.5))


class TestApplyS:
    grid = SpatialGrid(16.0, 0.125, 1)
    time = TimeAxis(1.0, 200)

    def test_initial_slice_is_zero(self) -> None:
        g = SpaceTimeField.from_function(self.grid, self.time, lambda t, x: np.exp(-x * x) * (1.0 + t))
        out = apply_S(g, KernelSpec(0.5))
        assert np.all(out.values[0] == 0.0)

    def test_zero_source(self) -> None:
        out = apply_S(SpaceTimeField.zeros(self.grid, self.time), KernelSpec(0.5))
        assert np.all(out.values == 0.0)

    def test_support_check(self) -> None:
        g = SpaceTimeField.from_function(
            self.grid, self.time, lambda t, x: (np.abs(x) > 10.0) * np.ones_like(t)
        )
        with pytest.raises(AliasingError):
            check_support(g.grid, g.values)

    def test_pde_residual_is_small(self) -> None:
        f = SpatialField.from_function(self.grid, lambda x: np.exp(-x * x))
        g = SpaceTimeField.from_function(self.grid, self.time, lambda t, x: np.exp(-x * x) * np.sin(t))
        assert pde_residual(f, g, KernelSpec(0.5)) < 1e-3


class TestFractionalLaplacian:
    grid = SpatialGrid(math.pi, math.pi / 16.0, 1)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 1.0])
    def test_fourier_mode_is_eigenfunction(self, alpha: float) -> None:
        x = self.grid.axis()
        out = fractional_laplacian(np.cos(3.0 * x), self.grid, alpha)
        np.testing.assert_allclose(out, 3.0 ** (2.0 * alpha) * np.cos(3.0 * x), atol=1e-12)

    def test_constant_is_annihilated(self) -> None:
        out = fractional_laplacian(np.full(self.grid.shape, 2.0), self.grid, 0.5)
        np.testing.assert_allclose(out, 0.0, atol=1e-12)

    def test_leading_time_axis(self) -> None:
        x = self.grid.axis()
        stacked = np.stack([np.sin(x), 2.0 * np.sin(x)])
        out = fractional_laplacian(stacked, self.grid, 0.5)
        np.testing.assert_allclose(out, stacked, atol=1e-12)


class TestAdjoints:
    def test_adjoint_R_of_dirac(self) -> None:
        mu = dirac(1.0, 0.0, weight=2.0)
        values = adjoint_R(mu, np.array([[0.0], [1.0]]), KernelSpec(0.5))
        np.testing.assert_allclose(values, [2.0 / math.pi, 1.0 / math.pi], rtol=1e-12)

    def test_adjoint_S_strict_future(self) -> None:
        mu = dirac(2.0, 0.0)
        values = adjoint_S(mu, np.array([1.0, 2.0, 3.0]), np.zeros((3, 1)), KernelSpec(0.5))
        assert values[0] == pytest.approx(1.0 / math.pi, rel=1e-12)
        assert values[1] == 0.0
        assert values[2] == 0.0

def _node(grid: SpatialGrid, x: float) -> int:
    return int(np.argmin(np.abs(grid.axis() - x)))


class TestDuhamelMode:
    grid = SpatialGrid(math.pi, math.pi / 16.0, 1)

    @staticmethod
    def _exact(t: np.ndarray, lam: float) -> np.ndarray:
        # ∫_0^t e^{−λ(t−s)}(1 + s) ds
        e = np.exp(-lam * t)
        return (1.0 + t) * (1.0 - e) / lam - (1.0 - e * (1.0 + lam * t)) / lam**2

    def _error(self, steps: int) -> float:
        time = TimeAxis(1.0, steps)
        g = SpaceTimeField.from_function(self.grid, time, lambda t, x: np.cos(3.0 * x) * (1.0 + t))
        out = apply_S(g, KernelSpec(0.5), periodic=True)
        exact = self._exact(time.nodes(), 3.0)[:, None] * np.cos(3.0 * self.grid.axis())[None, :]
        return float(np.max(np.abs(out.values - exact)))

    def test_single_mode_matches_closed_form(self) -> None:
        assert self._error(100) <= 1e-3

    def test_trapezoid_is_second_order(self) -> None:
        assert self._error(50) / self._error(100) > 3.0


class TestSemigroupAlgebra:
    grid = SpatialGrid(8.0, 0.125, 1)
    rng = np.random.default_rng(7)

    def test_linearity(self) -> None:
        f = SpatialField(self.grid, self.rng.standard_normal(self.grid.shape))
        g = SpatialField(self.grid, self.rng.standard_normal(self.grid.shape))
        spec = KernelSpec(0.5)
        mixed = SpatialField(self.grid, 2.0 * f.values - 3.0 * g.values)
        combined = apply_R(mixed, 0.7, spec, periodic=True)
        expected = (
            2.0 * apply_R(f, 0.7, spec, periodic=True).values
            - 3.0 * apply_R(g, 0.7, spec, periodic=True).values
        )
        np.testing.assert_allclose(combined.values, expected, atol=1e-12)

        time = TimeAxis(1.0, 8)
        a = SpaceTimeField(self.grid, time, self.rng.standard_normal((9,) + self.grid.shape))
        b = SpaceTimeField(self.grid, time, self.rng.standard_normal((9,) + self.grid.shape))
        summed = apply_S(SpaceTimeField(self.grid, time, a.values + b.values), spec, periodic=True)
        separate = apply_S(a, spec, periodic=True).values + apply_S(b, spec, periodic=True).values
        np.testing.assert_allclose(summed.values, separate, atol=1e-12)

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_composition(self, alpha: float) -> None:
        f = SpatialField(self.grid, self.rng.standard_normal(self.grid.shape))
        spec = KernelSpec(alpha)
        twice = apply_R(apply_R(f, 0.3, spec, periodic=True), 0.9, spec, periodic=True)
        once = apply_R(f, 1.2, spec, periodic=True)
        np.testing.assert_allclose(twice.values, once.values, atol=1e-12)

    @pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 4.0])
    def test_contraction(self, p: float) -> None:
        f = SpatialField(self.grid, self.rng.standard_normal(self.grid.shape))
        out = apply_R(f, 1.0, KernelSpec(0.5), periodic=True)
        assert norm_lp(out, p) <= norm_lp(f, p) * (1.0 + 1e-8)

    def test_positivity(self) -> None:
        spec = KernelSpec(0.5)
        f = SpatialField(self.grid, self.rng.random(self.grid.shape))
        out = apply_R(f, 0.5, spec, periodic=True)
        assert out.values.min() >= -1e-9 * out.values.max()

        time = TimeAxis(1.0, 16)
        g = SpaceTimeField(self.grid, time, self.rng.random((17,) + self.grid.shape))
        s = apply_S(g, spec, periodic=True)
        assert s.values.min() >= -1e-9 * s.values.max()


class TestDuality:
    grid = SpatialGrid(32.0, 0.25, 1)
    mu = DiscreteMeasure.from_atoms([(0.5, 0.0, 1.0), (0.75, 1.0, 2.0), (1.0, -2.0, 0.5)])

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_R_pairing(self, alpha: float) -> None:
        spec = KernelSpec(alpha)
        f = SpatialField.from_function(self.grid, lambda x: np.exp(-x * x))
        lhs = sum(
            w * apply_R(f, t, spec, periodic=True).values[_node(self.grid, x[0])]
            for t, x, w in zip(self.mu.times, self.mu.points, self.mu.weights)
        )
        rhs = self.grid.spacing * float(np.sum(f.values * adjoint_R(self.mu, self.grid.points(), spec)))
        assert lhs == pytest.approx(rhs, rel=1e-2)

    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_S_pairing(self, alpha: float) -> None:
        # g 는 [0, 1] 에만 있고 원자는 그 뒤: S g(t_i) = R_{t_i − 1} S g(1)
        spec = KernelSpec(alpha)
        time = TimeAxis(1.0, 200)
        late = DiscreteMeasure.from_atoms([(1.5, 0.0, 1.0), (2.0, 1.0, 2.0)])
        g = SpaceTimeField.from_function(self.grid, time, lambda t, x: np.exp(-x * x) * (1.0 + t))
        end = apply_S(g, spec, periodic=True).slice(time.steps)
        lhs = sum(
            w * apply_R(end, t - 1.0, spec, periodic=True).values[_node(self.grid, x[0])]
            for t, x, w in zip(late.times, late.points, late.weights)
        )
        dual = adjoint_S_field(late, self.grid, time, spec)
        per_time = self.grid.spacing * np.sum(g.values * dual.values, axis=1)
        rhs = float(trapezoid(per_time, dx=time.dt))
        assert lhs == pytest.approx(rhs, rel=1e-2)



class TestNorms:
    def test_single_cell_indicator(self, small_grid: SpatialGrid) -> None:
        values = np.zeros(small_grid.shape)
        values[5] = 1.0
        field = SpatialField(small_grid, values)
        assert norm_lp(field, 3.0) == pytest.approx(small_grid.spacing ** (1.0 / 3.0))

    def test_measure_norm(self) -> None:
        mu = dirac(1.0, 0.0, weight=4.0)
        assert norm_lq_mu(np.array([2.0]), mu, 2.0) == pytest.approx(4.0)

    def test_exponent_checked(self, small_grid: SpatialGrid) -> None:
        with pytest.raises(ValueError):
            norm_lp(SpatialField.zeros(small_grid), 0.5)


class TestFieldIO:
    def test_space_time_field(self, tmp_path: Path, small_grid: SpatialGrid, short_time: TimeAxis) -> None:
        g = SpaceTimeField.from_function(small_grid, short_time, lambda t, x: np.exp(-x * x) * t)
        path = save_field(g, tmp_path / "g.csv")
        loaded = load_field(path)
        assert isinstance(loaded, SpaceTimeField)
        assert loaded.time == short_time
        np.testing.assert_array_equal(loaded.values, g.values)

    def test_missing_sidecar(self, tmp_path: Path) -> None:
        (tmp_path / "f.csv").write_text("x1,value\n", encoding="utf-8")
        with pytest.raises(FileNotFoundError):
            load_field(tmp_path / "f.csv")
