"""
포물 기하: 포물 공, α-진 입방체, 이산 측도
"""

from fractrace.geometry.ball import (
    ParabolicBall,
    ball_contains,
    ball_volume,
    containment_interval,
    containment_intervals,
)
from fractrace.geometry.cube import BoxRegion, DyadicCube, cube_contains, cubes_containing, dilate
from fractrace.geometry.measure import DiscreteMeasure, load_measure, measure_of_region, save_measure

__all__ = [
    "ParabolicBall",
    "DyadicCube",
    "BoxRegion",
    "DiscreteMeasure",
    "ball_contains",
    "ball_volume",
    "containment_interval",
    "containment_intervals",
    "cube_contains",
    "cubes_containing",
    "dilate",
    "measure_of_region",
    "load_measure",
    "save_measure",
]
