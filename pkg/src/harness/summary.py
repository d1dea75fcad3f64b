"""
Per-cell summary statistics: detection rates with Wilson intervals, ROC sweeps and histograms
"""
import math
from dataclasses import astuple, dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from ..detectors.calibration import empirical_threshold
from ..numerics.chi2 import chi2_pdf
from .experiment import Cell

SUMMARY_FIELDS = ("experiment", "detector", "M", "N", "snr_db", "rho", "sir_db", "pfa_target",
                  "threshold", "trials", "pd", "pd_ci_lo", "pd_ci_hi", "pfa_emp", "pfa_ci_lo",
                  "pfa_ci_hi")

HISTOGRAM_FIELDS = ("bin_lo", "bin_hi", "count", "chi2_pdf_at_midpoint")

Interval = Tuple[Optional[float], Optional[float]]


@dataclass(frozen=True)
class SummaryRow:
    experiment: str
    detector: str
    m: int
    n: int
    snr_db: Optional[float]
    rho: float
    sir_db: Optional[float]
    pfa_target: float
    threshold: float
    trials: int
    pd: Optional[float]
    pd_ci_lo: Optional[float]
    pd_ci_hi: Optional[float]
    pfa_emp: Optional[float]
    pfa_ci_lo: Optional[float]
    pfa_ci_hi: Optional[float]

    def values(self) -> tuple:
        """Field values in CSV header order"""
        return astuple(self)

    def sort_key(self) -> tuple:
        coords = (self.m, self.n, self.snr_db, self.rho, self.sir_db, self.pfa_target)
        return (self.detector,) + tuple(float("-inf") if v is None else float(v) for v in coords)


@dataclass(frozen=True)
class HistogramBin:
    bin_lo: float
    bin_hi: float
    count: int
    chi2_pdf_at_midpoint: float

    def values(self) -> tuple:
        return astuple(self)


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> Interval:
    """Wilson score interval for a binomial proportion"""
    if trials <= 0:
        return None, None
    z = float(stats.norm.ppf(0.5 + confidence / 2.0))
    p = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def exceedances(statistics: Sequence[Optional[float]], threshold: float) -> Tuple[int, int]:
    """(number of decided statistics above threshold, number of decided statistics)"""
    decided = np.asarray([s for s in statistics if s is not None], dtype=np.float64)
    return int(np.count_nonzero(decided > threshold)), int(decided.size)


def _rate(statistics: Optional[Sequence[Optional[float]]], threshold: float):
    if statistics is None:
        return None, (None, None), 0
    hits, total = exceedances(statistics, threshold)
    if total == 0:
        return None, (None, None), 0
    return hits / total, wilson_interval(hits, total), total


def summarize_cell(experiment: str, detector: str, cell: Cell, threshold: float, pfa_target: float,
                   h1_statistics: Optional[Sequence[Optional[float]]],
                   h0_statistics: Optional[Sequence[Optional[float]]]) -> SummaryRow:
    """P_d over the H1 trials and empirical P_fa over the fresh H0 trials at one threshold"""
    pd, (pd_lo, pd_hi), n_h1 = _rate(h1_statistics, threshold)
    pfa, (pfa_lo, pfa_hi), n_h0 = _rate(h0_statistics, threshold)
    return SummaryRow(experiment=experiment, detector=detector, m=cell.m, n=cell.n,
                      snr_db=cell.snr_db, rho=cell.rho, sir_db=cell.sir_db,
                      pfa_target=pfa_target, threshold=threshold,
                      trials=n_h1 if h1_statistics is not None else n_h0,
                      pd=pd, pd_ci_lo=pd_lo, pd_ci_hi=pd_hi,
                      pfa_emp=pfa, pfa_ci_lo=pfa_lo, pfa_ci_hi=pfa_hi)


def roc_rows(experiment: str, detector: str, cell: Cell, h0_statistics: Sequence[Optional[float]],
             h1_statistics: Sequence[Optional[float]], pfa_grid: Sequence[float]) -> List[SummaryRow]:
    """One row per P_fa grid point, thresholds from the H0 empirical quantiles"""
    decided_h0 = [s for s in h0_statistics if s is not None]
    rows = []
    for pfa in pfa_grid:
        threshold = empirical_threshold(decided_h0, pfa)
        rows.append(summarize_cell(experiment, detector, cell, threshold, pfa,
                                   h1_statistics, h0_statistics))
    return rows


def histogram(statistics: Sequence[Optional[float]], bins: int, dof: int) -> List[HistogramBin]:
    """Counts over [0, max] with the chi2_dof density at every bin midpoint"""
    decided = np.asarray([s for s in statistics if s is not None], dtype=np.float64)
    upper = float(decided.max()) if decided.size else 1.0
    if upper <= 0.0:
        upper = 1.0
    counts, edges = np.histogram(decided, bins=bins, range=(0.0, upper))
    return [HistogramBin(bin_lo=float(lo), bin_hi=float(hi), count=int(count),
                         chi2_pdf_at_midpoint=float(chi2_pdf(0.5 * (lo + hi), dof)))
            for lo, hi, count in zip(edges[:-1], edges[1:], counts)]
