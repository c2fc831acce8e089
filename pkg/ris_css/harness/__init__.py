from ris_css.harness.attack_comparison import (
    AttackRankingRow,
    AttackRankingTable,
    PairVerdict,
    attack_proxy,
    compare_attacks,
)
from ris_css.harness.estimation import TrialBatch, estimate_metrics, run_sweep, simulate
from ris_css.harness.experiment import ExperimentSpec, PathSpec, SweepSpec
from ris_css.harness.metrics import (
    ResultRow,
    binary_entropy,
    binomial_stderr,
    confusion_counts,
    plugin_mutual_information,
    summarize,
)
from ris_css.harness.result_writer import (
    CSV_HEADER,
    format_table,
    gnuplot_script,
    rows_to_csv,
    rows_to_json,
    write_outputs,
)
from ris_css.harness.trial_runner import TrialEngine, TrialOutcome, run_trial

__all__ = [
    "AttackRankingRow",
    "AttackRankingTable",
    "PairVerdict",
    "attack_proxy",
    "compare_attacks",
    "TrialBatch",
    "estimate_metrics",
    "run_sweep",
    "simulate",
    "ExperimentSpec",
    "PathSpec",
    "SweepSpec",
    "ResultRow",
    "binary_entropy",
    "binomial_stderr",
    "confusion_counts",
    "plugin_mutual_information",
    "summarize",
    "CSV_HEADER",
    "format_table",
    "gnuplot_script",
    "rows_to_csv",
    "rows_to_json",
    "write_outputs",
    "TrialEngine",
    "TrialOutcome",
    "run_trial",
]
