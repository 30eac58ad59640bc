"""
포물 공, α-진 입방체, 이산 측도
"""

from pathlib import Path

import numpy as np
import pytest

from fractrace.experiments.families import dilation_family, lebesgue_ball_check, slab
from fractrace.geometry.ball import ParabolicBall, ball_contains, ball_volume, containment_interval
from fractrace.geometry.cube import DyadicCube, cube_contains, cubes_containing, dilate
from fractrace.geometry.measure import DiscreteMeasure, load_measure, measure_of_region, save_measure


class TestParabolicBall:
    ball = ParabolicBall(0.0, (0.0,), 1.0, 0.5)

    def test_strict_inequalities(self) -> None:
        assert self.ball.contains(1.5, 0.0)
        assert not self.ball.contains(1.0, 0.0)
        assert not self.ball.contains(2.0, 0.0)
        assert not self.ball.contains(1.5, 1.0)

    def test_ball_contains_takes_point_pair(self) -> None:
        assert ball_contains(self.ball, (1.5, (0.5,)))
        assert not ball_contains(self.ball, (1.5, (-1.0,)))
        two_dim = ParabolicBall(0.0, (0.0, 0.0), 1.0, 0.5)
        assert ball_contains(two_dim, (1.2, (0.6, 0.6)))
        assert not ball_contains(two_dim, (1.2, (0.8, 0.8)))

    def test_volume(self) -> None:
        assert ball_volume(ParabolicBall(0.0, (0.0,), 0.5, 0.5)) == pytest.approx(0.5)

    def test_validation(self) -> None:
        with pytest.raises(ValueError):
            ParabolicBall(-1.0, (0.0,), 1.0, 0.5)
        with pytest.raises(ValueError):
            ParabolicBall(0.0, (0.0,), 0.0, 0.5)

    def test_containment_interval(self) -> None:
        assert containment_interval((1.0, 0.0), (0.0, 0.0), 0.5) == (0.5, 1.0)
        assert containment_interval((1.0, 0.8), (0.0, 0.0), 0.5) == (0.8, 1.0)
        assert containment_interval((0.5, 0.0), (1.0, 0.0), 0.5) is None


class TestDyadicCubes:
    def test_one_cube_per_scale(self) -> None:
        point = (0.7, (0.3,))
        cubes = cubes_containing(point, range(-4, 5), alpha=0.5)
        assert [c.m for c in cubes] == list(range(-4, 5))
        assert all(cube_contains(c, point) for c in cubes)

    def test_nesting_at_half(self) -> None:
        cubes = cubes_containing((1.3, (-0.6,)), range(-3, 4), alpha=0.5)
        for small, big in zip(cubes, cubes[1:]):
            assert big.box().contains_box(small.box())

    def test_point_before_shift(self) -> None:
        with pytest.raises(ValueError):
            cubes_containing((0.1, (0.0,)), range(0, 2), shift=(0.5, 0.0))

    def test_dilate_is_clipped_at_zero(self) -> None:
        box = dilate(DyadicCube(m=0, k0=0, k=(0,), alpha=0.5), factor=4.0)
        assert box.t_lo == 0.0
        assert box.x_lo == (-1.5,)
        assert box.x_hi == (2.5,)

    def test_negative_time_index(self) -> None:
        with pytest.raises(ValueError):
            DyadicCube(m=0, k0=-1, k=(0,), alpha=0.5)


class TestDiscreteMeasure:
    def test_validation(self) -> None:
        with pytest.raises(ValueError):
            DiscreteMeasure(np.array([0.0]), np.array([[0.0]]), np.array([1.0]))
        with pytest.raises(ValueError):
            DiscreteMeasure(np.array([1.0]), np.array([[0.0]]), np.array([-1.0]))
        with pytest.raises(ValueError):
            DiscreteMeasure(np.array([1.0, 2.0]), np.array([[0.0]]), np.array([1.0]))

    def test_total_and_immutability(self) -> None:
        mu = DiscreteMeasure.from_atoms([(1.0, 0.0, 0.5), (2.0, 1.0, 1.5)])
        assert mu.total == 2.0
        with pytest.raises(ValueError):
            mu.weights[0] = 3.0

    def test_dilation(self) -> None:
        mu = DiscreteMeasure.from_atoms([(1.0, 0.5, 1.0)])
        family = dilation_family(mu, [2.0], alpha=0.5)
        assert family[2.0].times[0] == pytest.approx(2.0)
        assert family[2.0].points[0, 0] == pytest.approx(1.0)
        assert family[2.0].total == mu.total

    def test_measure_of_region(self) -> None:
        mu = DiscreteMeasure.from_atoms([(1.5, 0.0, 1.0), (1.5, 2.0, 4.0), (3.0, 0.0, 8.0)])
        assert measure_of_region(mu, ParabolicBall(0.0, (0.0,), 1.0, 0.5)) == 1.0

    def test_csv_round_trip(self, tmp_path: Path) -> None:
        mu = slab(1.0, 2.0, -1.0, 1.0, 3, 4)
        save_measure(mu, tmp_path / "mu.csv")
        loaded = load_measure(tmp_path / "mu.csv")
        np.testing.assert_array_equal(loaded.times, mu.times)
        np.testing.assert_array_equal(loaded.weights, mu.weights)

    def test_csv_rejects_bad_header(self, tmp_path: Path) -> None:
        (tmp_path / "bad.csv").write_text("a,b,c\n1,0,1\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_measure(tmp_path / "bad.csv")

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_lebesgue_ball_volume(self, alpha: float) -> None:
        check = lebesgue_ball_check(alpha)
        assert check["relative_error"] <= 1e-9
