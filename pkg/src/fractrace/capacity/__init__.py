"""
C_p^{(R_α)}, C_p^{(S_α)} 용량 괄호
"""

from fractrace.capacity.equilibrium import EquilibriumResult, equilibrium_measure
from fractrace.capacity.grid import CapacityGrid
from fractrace.capacity.sets import CompactSetApprox, atoms_set, ball_samples, load_set, save_set
from fractrace.capacity.solver import (
    CapacityEstimate,
    CouplingProblem,
    GridSettings,
    SolverControls,
    ball_capacity,
    build_problem,
    capacity_dual,
    capacity_primal,
    solve_dual,
    solve_primal,
)
from fractrace.capacity.superlevel import SuperlevelProblem, superlevel_capacity, superlevel_problem
from fractrace.capacity.threshold import BallLattice, ThresholdBracket, mass_threshold_capacity

__all__ = [
    "BallLattice",
    "CapacityEstimate",
    "CapacityGrid",
    "CompactSetApprox",
    "CouplingProblem",
    "EquilibriumResult",
    "GridSettings",
    "SolverControls",
    "SuperlevelProblem",
    "ThresholdBracket",
    "atoms_set",
    "ball_capacity",
    "ball_samples",
    "build_problem",
    "capacity_dual",
    "capacity_primal",
    "equilibrium_measure",
    "load_set",
    "mass_threshold_capacity",
    "save_set",
    "solve_dual",
    "solve_primal",
    "superlevel_capacity",
    "superlevel_problem",
]
