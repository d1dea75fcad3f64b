"""
CSV writers for summaries, trial records and histograms
"""
import csv
import logging
import sys
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO, Union

from ..utils.errors import OutputError
from .experiment import TrialRecord
from .summary import HISTOGRAM_FIELDS, SUMMARY_FIELDS, HistogramBin, SummaryRow

logger = logging.getLogger(__name__)

TRIAL_FIELDS = ("experiment", "detector", "M", "N", "snr_db", "rho", "sir_db", "hypothesis", "trial",
                "statistic", "threshold", "decision", "noise_var")

PathLike = Union[str, Path]


def format_value(value) -> str:
    """None -> '', bool -> 0/1, float -> 10 significant digits"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _write(header: Sequence[str], rows: Iterable[Sequence], stream: TextIO) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_value(v) for v in row])
        count += 1
    return count


def emit_rows(header: Sequence[str], rows: Iterable[Sequence], path: Optional[PathLike]) -> None:
    """Write a header and formatted rows to path, or to stdout when path is None or '-'"""
    if path is None or str(path) == "-":
        _write(header, rows, sys.stdout)
        return
    path = Path(path)
    try:
        if path.parent and not path.parent.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as f:
            count = _write(header, rows, f)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e}") from e
    logger.info("wrote %d row(s) to %s", count, path)


def emit_csv(rows: Iterable[SummaryRow], path: Optional[PathLike]) -> None:
    """Summary CSV, rows sorted by detector and cell coordinates"""
    ordered = sorted(rows, key=SummaryRow.sort_key)
    emit_rows(SUMMARY_FIELDS, (row.values() for row in ordered), path)


def _trial_row(record: TrialRecord) -> tuple:
    return (record.experiment, record.detector, record.m, record.n, record.snr_db, record.rho,
            record.sir_db, f"H{record.hypothesis}", record.trial, record.statistic, record.threshold,
            record.decision, record.noise_variance)


def emit_trials_csv(records: Iterable[TrialRecord], path: Optional[PathLike]) -> None:
    """Trial-level CSV in record order"""
    emit_rows(TRIAL_FIELDS, (_trial_row(r) for r in records), path)


def emit_histogram(bins: Iterable[HistogramBin], path: Optional[PathLike]) -> None:
    emit_rows(HISTOGRAM_FIELDS, (b.values() for b in bins), path)


def histogram_path(path: PathLike, m: int, noise_variance: float, rho: float = 0.0) -> Path:
    """hist.csv -> hist_M2_var10.csv (hist_M2_var10_rho0.5.csv for correlated noise)"""
    path = Path(path)
    suffix = path.suffix or ".csv"
    tag = f"_M{m}_var{noise_variance:g}"
    if rho:
        tag += f"_rho{rho:g}"
    return path.with_name(f"{path.stem}{tag}{suffix}")
