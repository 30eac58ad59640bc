"""
분수 열 커널 K_t^(α) 모듈
"""

from fractrace.kernel.closed_form import eval_closed_form, origin_value, tail_constant
from fractrace.kernel.numeric import eval_numeric, evaluate
from fractrace.kernel.profile import KernelProfile, domination_constant, get_profile
from fractrace.kernel.sampler import sample_stable
from fractrace.kernel.spec import KernelSpec, KernelValue
from fractrace.kernel.validation import check_mass, check_self_similarity, envelope_ratio_scan

__all__ = [
    "KernelSpec",
    "KernelValue",
    "KernelProfile",
    "get_profile",
    "domination_constant",
    "eval_closed_form",
    "eval_numeric",
    "evaluate",
    "origin_value",
    "tail_constant",
    "check_mass",
    "check_self_similarity",
    "envelope_ratio_scan",
    "sample_stable",
]
