from ris_css.fusion.llr_rules import (
    CLAMP,
    LLR_RULES,
    BranchInputs,
    FusionRuleKind,
    branch_llrs,
    llr_branch_high_snr,
    llr_branch_ideal_sensing,
    llr_branch_low_snr,
    llr_branch_optimal,
    optimal_kernel,
)
from ris_css.fusion.fusion_center import (
    FusionResult,
    decide,
    decision_threshold,
    fuse,
    sum_llrs,
)

__all__ = [
    "CLAMP",
    "LLR_RULES",
    "BranchInputs",
    "FusionRuleKind",
    "branch_llrs",
    "llr_branch_high_snr",
    "llr_branch_ideal_sensing",
    "llr_branch_low_snr",
    "llr_branch_optimal",
    "optimal_kernel",
    "FusionResult",
    "decide",
    "decision_threshold",
    "fuse",
    "sum_llrs",
]
