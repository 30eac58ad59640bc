"""
실험 보조 모듈: 적합, 측도 family, Strichartz, 척도 스윕, 문턱 조건
"""

import csv
import math
from pathlib import Path

import numpy as np
import pytest

from fractrace.capacity.sets import CompactSetApprox, load_set, save_set
from fractrace.capacity.solver import DUALITY_RTOL, GridSettings
from fractrace.core.config import Config
from fractrace.core.context import ExperimentContext
from fractrace.core.errors import RegimeError
from fractrace.experiments.families import (
    build_measure,
    consistency_family,
    hyperplane,
    thin_slab,
    two_scale,
)
from fractrace.experiments.fitting import fit_loglog, rank_correlation
from fractrace.experiments.scaling.sweep import run_scaling
from fractrace.experiments.strichartz.sweep import strichartz_ratio, strichartz_sweep
from fractrace.experiments.trace.conditions import threshold_conditions
from fractrace.experiments.trace.experiment import TraceExperiment
from fractrace.geometry.measure import DiscreteMeasure, save_measure
from fractrace.semigroup.fields import SpaceTimeField, SpatialGrid, TimeAxis

SMALL = GridSettings(cells=24, time_cells=8, subnodes=2)


class TestFitting:
    def test_exact_power_law(self) -> None:
        x = [0.25, 0.5, 1.0, 2.0]
        fit = fit_loglog(x, [3.0 * v**1.5 for v in x])
        assert fit.slope == pytest.approx(1.5, abs=1e-12)
        assert math.exp(fit.intercept) == pytest.approx(3.0, rel=1e-12)
        assert fit.half_width == pytest.approx(0.0, abs=1e-9)
        assert fit.points == 4

    def test_rejects_nonpositive(self) -> None:
        with pytest.raises(ValueError):
            fit_loglog([1.0, 2.0], [1.0, 0.0])
        with pytest.raises(ValueError):
            fit_loglog([1.0], [1.0])

    def test_rank_correlation(self) -> None:
        assert rank_correlation([1, 2, 3, 4], [10, 20, 25, 100]) == pytest.approx(1.0)
        assert rank_correlation([1, 2, 3, 4], [4, 3, 2, 1]) == pytest.approx(-1.0)


class TestFamilies:
    def test_slab_by_name(self) -> None:
        mu = build_measure("slab", time_cells=2, space_cells=4)
        assert len(mu) == 8
        assert mu.total == pytest.approx(2.0)

    def test_hyperplane_lives_on_one_slice(self) -> None:
        mu = hyperplane(t1=1.5, cells=8)
        assert np.all(mu.times == 1.5)
        assert mu.total == pytest.approx(2.0)

    def test_two_scale_doubles_mass(self) -> None:
        assert two_scale(mass_ratio=1.0).total == pytest.approx(4.0)

    def test_thin_slab_keeps_mass(self) -> None:
        for h in (0.5, 0.0625):
            mu = thin_slab(h)
            assert mu.total == pytest.approx(2.0)
            assert mu.times.min() > h and mu.times.max() < 2.0 * h

    def test_consistency_family_members(self) -> None:
        members = consistency_family(
            hyperplane(), 0.5, dilations=(1.0, 2.0), thicknesses=(0.5,), fine_scales=(0.2, 0.1)
        )
        assert [(m.family, m.parameter) for m in members] == [
            ("dilation", 1.0), ("dilation", 2.0), ("thin_slab", 0.5), ("two_scale", 0.2), ("two_scale", 0.1),
        ]
        assert members[1].measure.times[0] == pytest.approx(2.0 * members[0].measure.times[0])

    def test_file_source(self, tmp_path: Path) -> None:
        path = tmp_path / "mu.csv"
        save_measure(DiscreteMeasure.from_atoms([(1.0, 0.0, 0.5), (2.0, 1.0, 1.5)]), path)
        mu = build_measure(f"file:{path}")
        assert mu.total == pytest.approx(2.0)

    def test_unknown_family(self) -> None:
        with pytest.raises(ValueError):
            build_measure("cantor")


class TestSetIO:
    def test_round_trip_keeps_points(self, tmp_path: Path) -> None:
        K = CompactSetApprox(np.array([1.0, 1.25]), np.array([[0.0], [0.5]]), provenance="custom")
        path = tmp_path / "K.csv"
        save_set(K, path)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "t,x1"
        loaded = load_set(path)
        np.testing.assert_array_equal(loaded.times, K.times)
        np.testing.assert_array_equal(loaded.points, K.points)

    def test_bad_header(self, tmp_path: Path) -> None:
        path = tmp_path / "K.csv"
        path.write_text("time,x\n1,0\n", encoding="utf-8")
        with pytest.raises(ValueError):
            load_set(path)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(FileNotFoundError):
            load_set(tmp_path / "none.csv")


class TestStrichartz:
    def test_zero_source(self) -> None:
        g = SpaceTimeField.zeros(SpatialGrid(4.0, 0.25, 1), TimeAxis(1.0, 8))
        assert strichartz_ratio(g, 0.5, 1.5) == 0.0

    def test_small_sweep(self) -> None:
        result = strichartz_sweep(0.5, 1.5, trials=2, half_width=16.0, spacing=0.25, time_steps=32)
        assert result.q_tilde == pytest.approx(6.0)
        assert len(result.rows) == 2
        assert all(row.ratio > 0 and row.rescaled_ratio > 0 for row in result.rows)

    def test_endpoint_rejected(self) -> None:
        with pytest.raises(RegimeError):
            strichartz_sweep(0.5, 2.0, trials=1)


class TestThresholdConditions:
    mu = DiscreteMeasure.from_atoms([(1.0, 0.0, 1.0), (1.5, 0.2, 2.0), (2.5, -0.1, 0.5)])

    def test_ladder_and_order(self) -> None:
        result = threshold_conditions(self.mu, 2.0, 3.0, 0.5, levels=2, settings=SMALL)
        assert result.levels == [3.5, 1.75]
        pairs = zip(result.capacity_lower, result.capacity_upper)
        assert all(lo <= hi * (1.0 + DUALITY_RTOL) for lo, hi in pairs)
        assert 0.0 < result.value_lower <= result.value_upper * (1.0 + DUALITY_RTOL)


@pytest.mark.slow
def test_scaled_grid_slope() -> None:
    result = run_scaling("R", 0.5, 2.0, radii=(0.5, 1.0, 2.0), settings=SMALL, time_samples=4, space_samples=8)
    assert result.expected_slope == 1.0
    assert len(result.rows) == 3
    assert result.slope_error <= 0.2


def test_scaling_s_regime() -> None:
    with pytest.raises(RegimeError):
        run_scaling("S", 0.5, 2.0, radii=(1.0,), settings=SMALL)


@pytest.mark.slow
def test_trace_experiment_reports_threshold_and_families(context: ExperimentContext) -> None:
    config = Config()
    overrides = {
        "logging.console": False,
        "capacity.grid_cells": 24,
        "capacity.time_cells": 8,
        "trace.trials": 2,
        "trace.cells": 32,
        "trace.time_cells": 8,
        "trace.variants": ["R"],
        "trace.regimes": [[2.0, 3.0]],
        "trace.dilations": [0.5, 1.0, 2.0],
        "trace.thicknesses": [0.5, 0.25],
        "trace.fine_scales": [0.4, 0.2],
        "trace.threshold_levels": 2,
        "trace.measure_params": {"time_cells": 2, "space_cells": 4},
    }
    for key, value in overrides.items():
        config.set(key, value)
    output = TraceExperiment(context, config).run()
    tables = output["data"]["tables"]

    with open(tables["threshold"], encoding="utf-8") as f:
        threshold = list(csv.DictReader(f))
    assert [int(float(row["level"])) for row in threshold] == [0, 1]
    assert all(float(row["capacity_lower"]) > 0 for row in threshold)

    with open(tables["consistency"], encoding="utf-8") as f:
        families = [row["family"] for row in csv.DictReader(f)]
    assert families == ["dilation"] * 3 + ["thin_slab"] * 2 + ["two_scale"] * 2

    names = [check["name"] for check in output["data"]["checks"]]
    assert "R p=2.0 q=3.0 문턱 조건 괄호 순서" in names
