from ris_css.attack_analysis.named_llr import branch_llr_named, report_one_probability
from ris_css.attack_analysis.ranking import (
    RANKED_MODES,
    AttackComparison,
    CrossoverThresholds,
    OptimalityCheck,
    compare_named_attacks,
    crossover_thresholds,
    predicted_ranks,
    ranking_proxies,
    verify_small_scale_optimality,
)

__all__ = [
    "branch_llr_named",
    "report_one_probability",
    "RANKED_MODES",
    "AttackComparison",
    "CrossoverThresholds",
    "OptimalityCheck",
    "compare_named_attacks",
    "crossover_thresholds",
    "predicted_ranks",
    "ranking_proxies",
    "verify_small_scale_optimality",
]
