"""
Empirical CFAR thresholds for the baseline detectors
"""
import logging
from typing import Optional, Sequence

import numpy as np

from ..channel.scenario import H0, Scenario
from ..config.settings import FEATURE_LAG, PERFECT_CSI_ID, TRIAL_CHUNK
from ..numerics.random import PURPOSE_CALIBRATE
from ..sigmodel.bpsk import CyclicFeature, soi_feature
from ..utils.errors import ContractError
from ..utils.workers import TrialPool, chunk_ranges
from .base import parse_detector_id
from .montecarlo import TrialBatch, evaluate_batch

logger = logging.getLogger(__name__)


def empirical_threshold(statistics: Sequence[float], target_pfa: float) -> float:
    """Sorted statistics at index ceil((1 - target_pfa) n) - 1

    With the strict test statistic > threshold at most floor(target_pfa n) of the n
    calibration values exceed the returned threshold, and exactly that many when they are distinct.
    """
    if not 0.0 < target_pfa < 1.0:
        raise ContractError(f"target_pfa must lie in (0, 1), got {target_pfa}")
    values = np.sort(np.asarray(statistics, dtype=np.float64))
    if values.size == 0:
        raise ContractError("no statistics to take a quantile of")
    index = max(0, int(np.ceil((1.0 - target_pfa) * values.size - 1e-9)) - 1)
    return float(values[index])


def h0_statistics(detector_id, scenario: Scenario, n_trials: int, master_seed: int,
                  feature: Optional[CyclicFeature] = None, purpose: int = PURPOSE_CALIBRATE,
                  pool: Optional[TrialPool] = None) -> np.ndarray:
    """Detector statistics over n_trials seeded H0 frames, sorted ascending"""
    name = str(detector_id)
    if name != PERFECT_CSI_ID:
        name = parse_detector_id(name).value
    if feature is None:
        feature = soi_feature(scenario.signal, FEATURE_LAG)

    batches = [TrialBatch(detector_ids=(name,), scenario=scenario, feature=feature, hypothesis=H0,
                          master_seed=master_seed, start=start, stop=stop, purpose=purpose)
               for start, stop in chunk_ranges(n_trials, TRIAL_CHUNK)]

    owned = pool is None
    pool = pool or TrialPool(1)
    try:
        results = pool.map(evaluate_batch, batches)
    finally:
        if owned:
            pool.stop()

    values = [trial.statistics[name] for batch in results for trial in batch]
    decided = [v for v in values if v is not None]
    if len(decided) < len(values):
        logger.warning("%s: %d of %d calibration frames stayed undecidable",
                       name, len(values) - len(decided), len(values))
    return np.sort(np.asarray(decided, dtype=np.float64))


def calibrate_threshold(detector_id, scenario: Scenario, target_pfa: float, n_trials: int,
                        seed: int, feature: Optional[CyclicFeature] = None,
                        pool: Optional[TrialPool] = None) -> float:
    """Empirical (1 - target_pfa) quantile of the detector statistic under H0"""
    if not 0.0 < target_pfa < 1.0:
        raise ContractError(f"target_pfa must lie in (0, 1), got {target_pfa}")
    if n_trials < 10.0 / target_pfa - 1e-9:
        raise ContractError(f"n_trials={n_trials} is below 10/target_pfa for target_pfa={target_pfa}")

    statistics = h0_statistics(detector_id, scenario, n_trials, seed, feature, pool=pool)
    threshold = empirical_threshold(statistics, target_pfa)
    logger.debug("calibrated %s: M=%d N=%d rho=%g pfa=%g -> %.6g",
                 detector_id, scenario.n_antennas, scenario.n_samples, scenario.rho, target_pfa, threshold)
    return threshold
