"""
이산 측도의 Wolff 퍼텐셜, 최대함수, 쌍대성 비율
"""

from fractrace.potentials.duality import DualityGrid, DualityResult, wolff_duality_ratio
from fractrace.potentials.dyadic import DyadicWolff, dyadic_energy, maximal_dyadic, wolff_dyadic
from fractrace.potentials.maximal import (
    maximal_centered,
    maximal_R,
    maximal_R_many,
    maximal_spacetime,
)
from fractrace.potentials.sweep import SweepPieces, sweep
from fractrace.potentials.wolff import (
    WolffProfile,
    wolff_at_atoms,
    wolff_energy,
    wolff_quadrature,
    wolff_R,
    wolff_S,
)

__all__ = [
    "DualityGrid",
    "DualityResult",
    "DyadicWolff",
    "SweepPieces",
    "WolffProfile",
    "dyadic_energy",
    "maximal_centered",
    "maximal_dyadic",
    "maximal_R",
    "maximal_R_many",
    "maximal_spacetime",
    "sweep",
    "wolff_at_atoms",
    "wolff_duality_ratio",
    "wolff_dyadic",
    "wolff_energy",
    "wolff_quadrature",
    "wolff_R",
    "wolff_S",
]
