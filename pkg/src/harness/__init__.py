"""
Monte Carlo experiment harness: configuration, runner, summaries and CSV output
"""
from .experiment import Cell, ExperimentConfig, ExperimentKind, TrialRecord, parse_kind
from .output import emit_csv, emit_histogram, emit_trials_csv, histogram_path
from .runner import CellDiagnostics, ExperimentResult, ExperimentRunner, run_experiment
from .summary import SummaryRow, histogram, roc_rows, summarize_cell, wilson_interval

__all__ = [
    "Cell", "ExperimentConfig", "ExperimentKind", "TrialRecord", "parse_kind", "emit_csv",
    "emit_histogram", "emit_trials_csv", "histogram_path", "CellDiagnostics", "ExperimentResult",
    "ExperimentRunner", "run_experiment", "SummaryRow", "histogram", "roc_rows", "summarize_cell",
    "wilson_interval",
]
