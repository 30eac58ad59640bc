"""
공용 pytest 픽스처
"""

from pathlib import Path

import pytest

from fractrace.core.config import Config
from fractrace.core.context import ExperimentContext, new_context
from fractrace.experiments.families import chain
from fractrace.geometry.measure import DiscreteMeasure
from fractrace.semigroup.fields import SpatialGrid, TimeAxis


@pytest.fixture
def out_dir(tmp_path: Path) -> Path:
    """실험 결과 루트"""
    return tmp_path / "out"


@pytest.fixture
def context(out_dir: Path) -> ExperimentContext:
    return new_context(0, str(out_dir))


@pytest.fixture
def config() -> Config:
    """기본값만 쓰는 설정"""
    return Config()


@pytest.fixture
def small_grid() -> SpatialGrid:
    return SpatialGrid(8.0, 0.25, 1)


@pytest.fixture
def short_time() -> TimeAxis:
    return TimeAxis(2.0, 16)


@pytest.fixture
def chain_measure() -> DiscreteMeasure:
    """모든 앞 원자의 전진 공에 뒤 원자가 들어가는 사슬"""
    return chain(6, 0.5, seed=3)
