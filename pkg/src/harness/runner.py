"""
Monte Carlo experiment engine.

Every cell draws fresh fading, noise and sources per trial. Baseline thresholds
are calibrated per cell on H0 frames of that cell; EV-CSS uses its analytic
chi-squared threshold. Empirical P_fa is measured on H0 frames drawn from a
separate seed purpose, so calibration and evaluation never share a frame.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from scipy import stats
from tqdm import tqdm

from ..channel.scenario import H0, H1, Scenario
from ..config.settings import TRIAL_CHUNK, UNDECIDABLE_WARN_FRACTION
from ..detectors.base import DetectorId
from ..detectors.calibration import empirical_threshold
from ..detectors.evcss import analytic_threshold, degrees_of_freedom
from ..detectors.montecarlo import TrialBatch, TrialStatistics, evaluate_batch
from ..numerics.random import PURPOSE_CALIBRATE, PURPOSE_EVALUATE, PURPOSE_FRESH_H0
from ..sigmodel.bpsk import CyclicFeature
from ..utils.workers import TrialPool, chunk_ranges
from .experiment import Cell, ExperimentConfig, ExperimentKind, TrialRecord
from .summary import HistogramBin, SummaryRow, histogram, roc_rows, summarize_cell

logger = logging.getLogger(__name__)

EV_CSS = DetectorId.EV_CSS.value

Statistics = Dict[str, List[Optional[float]]]


@dataclass
class CellDiagnostics:
    """Per-cell bookkeeping: frames drawn, re-draws, clamp activations and the CFAR KS p-value"""
    cell: Cell
    frames: int = 0
    undecidable: int = 0
    unresolved: int = 0
    clamped: int = 0
    ks_pvalue: Optional[float] = None

    @property
    def undecidable_fraction(self) -> float:
        return self.undecidable / self.frames if self.frames else 0.0

    def absorb(self, outcomes: Sequence[TrialStatistics]) -> None:
        for outcome in outcomes:
            self.frames += 1
            self.undecidable += 1 if outcome.redraws else 0
            self.clamped += outcome.clamped
            if any(v is None for v in outcome.statistics.values()):
                self.unresolved += 1


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    records: List[TrialRecord] = field(default_factory=list)
    summary: List[SummaryRow] = field(default_factory=list)
    histograms: List[Tuple[Cell, List[HistogramBin]]] = field(default_factory=list)
    diagnostics: List[CellDiagnostics] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


class ExperimentRunner:
    """Runs one ExperimentConfig cell by cell on a trial pool"""

    def __init__(self, config: ExperimentConfig, show_progress: bool = True, keep_records: bool = True):
        config.validate()
        self.config = config
        self.kind = config.experiment_kind
        self.feature: CyclicFeature = config.feature
        self.detectors = config.evaluated_detectors
        self.show_progress = show_progress
        self.keep_records = keep_records
        self.pool: Optional[TrialPool] = None
        self.progress: Optional[tqdm] = None

    # --- pass bookkeeping ---

    def _calibrated(self) -> Tuple[str, ...]:
        if self.kind == ExperimentKind.ROC:
            return ()
        return tuple(d for d in self.detectors if d != EV_CSS)

    def _trials_per_cell(self) -> int:
        config = self.config
        total = config.n_trials * (2 if self.kind.has_h1 else 1)
        if self._calibrated():
            total += config.calibration_trials
        return total

    def _statistics(self, detectors: Tuple[str, ...], scenario: Scenario, hypothesis: int,
                    n_trials: int, purpose: int) -> Tuple[Statistics, List[TrialStatistics]]:
        batches = [TrialBatch(detector_ids=detectors, scenario=scenario, feature=self.feature,
                              hypothesis=hypothesis, master_seed=self.config.master_seed,
                              start=start, stop=stop, purpose=purpose)
                   for start, stop in chunk_ranges(n_trials, TRIAL_CHUNK)]

        def on_done(batch: TrialBatch, _result) -> None:
            if self.progress is not None:
                self.progress.update(batch.stop - batch.start)

        outcomes = [trial for result in self.pool.map(evaluate_batch, batches, on_done) for trial in result]
        values = {d: [o.statistics[d] for o in outcomes] for d in detectors}
        return values, outcomes

    # --- cells ---

    def _thresholds(self, cell: Cell, scenario: Scenario, diagnostics: CellDiagnostics) -> Dict[str, float]:
        config = self.config
        thresholds = {}
        if EV_CSS in self.detectors:
            thresholds[EV_CSS] = analytic_threshold(cell.m, self.feature.conjugate, config.pfa)
        calibrated = self._calibrated()
        if calibrated:
            values, outcomes = self._statistics(calibrated, scenario, H0, config.calibration_trials,
                                                PURPOSE_CALIBRATE)
            diagnostics.absorb(outcomes)
            for detector in calibrated:
                decided = [v for v in values[detector] if v is not None]
                thresholds[detector] = empirical_threshold(decided, config.pfa)
        for detector, threshold in thresholds.items():
            logger.debug("%s threshold %s = %.6g", cell.label(), detector, threshold)
        return thresholds

    def _records(self, cell: Cell, hypothesis: int, values: Statistics,
                 thresholds: Dict[str, float]) -> List[TrialRecord]:
        records = []
        n_trials = len(next(iter(values.values())))
        for trial in range(n_trials):
            for detector in self.detectors:
                statistic = values[detector][trial]
                threshold = thresholds[detector]
                records.append(TrialRecord(
                    experiment=self.kind.value, detector=detector, m=cell.m, n=cell.n,
                    snr_db=cell.snr_db, rho=cell.rho, sir_db=cell.sir_db, hypothesis=hypothesis,
                    trial=trial, statistic=statistic, threshold=threshold,
                    decision=statistic is not None and statistic > threshold,
                    noise_variance=cell.noise_variance))
        return records

    def _ks_check(self, cell: Cell, h0: Statistics, diagnostics: CellDiagnostics) -> None:
        if EV_CSS not in h0:
            return
        decided = [v for v in h0[EV_CSS] if v is not None]
        if not decided:
            return
        dof = degrees_of_freedom(cell.m, self.feature.conjugate)
        diagnostics.ks_pvalue = float(stats.kstest(decided, "chi2", args=(dof,)).pvalue)
        logger.info("%s: EV-CSS vs chi2_%d KS p-value %.4f", cell.label(), dof, diagnostics.ks_pvalue)

    def run_cell(self, cell: Cell, result: ExperimentResult) -> None:
        config = self.config
        scenario = config.scenario(cell)
        diagnostics = CellDiagnostics(cell=cell)
        logger.info("%s cell %s", self.kind.value, cell.label())

        thresholds = self._thresholds(cell, scenario, diagnostics)

        h1 = None
        if self.kind.has_h1:
            h1, outcomes = self._statistics(self.detectors, scenario, H1, config.n_trials, PURPOSE_EVALUATE)
            diagnostics.absorb(outcomes)
        h0_purpose = PURPOSE_FRESH_H0 if self.kind.has_h1 else PURPOSE_EVALUATE
        h0, outcomes = self._statistics(self.detectors, scenario, H0, config.n_trials, h0_purpose)
        diagnostics.absorb(outcomes)

        if self.kind == ExperimentKind.ROC:
            for detector in self.detectors:
                decided = [v for v in h0[detector] if v is not None]
                thresholds[detector] = empirical_threshold(decided, config.pfa)
                result.summary.extend(roc_rows(self.kind.value, detector, cell, h0[detector],
                                               h1[detector], config.roc_pfa_grid))
        else:
            for detector in self.detectors:
                result.summary.append(summarize_cell(
                    self.kind.value, detector, cell, thresholds[detector], config.pfa,
                    h1[detector] if h1 is not None else None, h0[detector]))

        if not self.kind.has_h1:
            self._ks_check(cell, h0, diagnostics)
        if self.kind == ExperimentKind.STATISTIC_HIST and EV_CSS in h0:
            dof = degrees_of_freedom(cell.m, self.feature.conjugate)
            result.histograms.append((cell, histogram(h0[EV_CSS], config.hist_bins, dof)))

        if self.keep_records:
            if h1 is not None:
                result.records.extend(self._records(cell, H1, h1, thresholds))
            result.records.extend(self._records(cell, H0, h0, thresholds))

        if diagnostics.undecidable_fraction > UNDECIDABLE_WARN_FRACTION:
            message = (f"{cell.label()}: {diagnostics.undecidable} of {diagnostics.frames} frames were "
                       f"undecidable ({diagnostics.unresolved} stayed undecidable after re-draws)")
            logger.warning(message)
            result.warnings.append(message)
        if diagnostics.clamped:
            logger.info("%s: %d canonical correlation(s) clamped", cell.label(), diagnostics.clamped)
        result.diagnostics.append(diagnostics)

    def run(self) -> ExperimentResult:
        """Run every cell and collect records, summary rows, histograms and diagnostics"""
        config = self.config
        cells = config.cells()
        result = ExperimentResult(config=config)
        logger.info("%s: %d cell(s), detectors %s, %d trial(s) per pass, seed %d",
                    self.kind.value, len(cells), ",".join(self.detectors), config.n_trials,
                    config.master_seed)

        with TrialPool(config.workers) as pool, tqdm(total=len(cells) * self._trials_per_cell(),
                                                     desc=self.kind.value, unit="trial",
                                                     disable=not self.show_progress) as bar:
            self.pool = pool
            self.progress = bar
            try:
                for cell in cells:
                    self.run_cell(cell, result)
            finally:
                self.pool = None
                self.progress = None
        return result


def run_experiment(config: ExperimentConfig, show_progress: bool = False,
                   keep_records: bool = True) -> ExperimentResult:
    """Run an experiment end to end"""
    return ExperimentRunner(config, show_progress=show_progress, keep_records=keep_records).run()
