"""
R_α, S_α 와 수반 작용소, 격자 노름
"""

from fractrace.semigroup.adjoints import adjoint_R, adjoint_R_field, adjoint_S, adjoint_S_field
from fractrace.semigroup.exponents import (
    ExponentConfig,
    conjugate,
    regime,
    require_s_regime,
    s_critical,
    strichartz_exponent,
)
from fractrace.semigroup.fields import SpaceTimeField, SpatialField, SpatialGrid, TimeAxis
from fractrace.semigroup.io import load_field, save_field
from fractrace.semigroup.norms import norm_lp, norm_lq_mu, sample_at_atoms
from fractrace.semigroup.operators import (
    apply_R,
    apply_S,
    duhamel_solution,
    fractional_laplacian,
    pde_residual,
)

__all__ = [
    "ExponentConfig",
    "SpaceTimeField",
    "SpatialField",
    "SpatialGrid",
    "TimeAxis",
    "adjoint_R",
    "adjoint_R_field",
    "adjoint_S",
    "adjoint_S_field",
    "apply_R",
    "apply_S",
    "conjugate",
    "duhamel_solution",
    "fractional_laplacian",
    "load_field",
    "norm_lp",
    "norm_lq_mu",
    "pde_residual",
    "regime",
    "require_s_regime",
    "s_critical",
    "sample_at_atoms",
    "save_field",
    "strichartz_exponent",
]
