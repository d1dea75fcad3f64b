"""
Pure per-trial kernel shared by calibration and the experiment harness.

One trial draws one frame (seeded by trial index and hypothesis only) and
evaluates every requested detector on it. EV-CSS frames with a singular sample
covariance are re-drawn with the next attempt sub-seed.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..channel.scenario import Scenario, synthesize_frame
from ..config.settings import MAX_REDRAWS, PERFECT_CSI_ID
from ..numerics.random import PURPOSE_EVALUATE
from ..sigmodel.bpsk import CyclicFeature
from ..utils.errors import UndecidableFrameError
from .base import DetectorId, statistic_registry
from .baselines import mrc_msdf_statistic
from .evcss import ccst_decomposition

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialBatch:
    """A contiguous range of trials of one scenario and hypothesis"""
    detector_ids: Tuple[str, ...]
    scenario: Scenario
    feature: CyclicFeature
    hypothesis: int
    master_seed: int
    start: int
    stop: int
    purpose: int = PURPOSE_EVALUATE


@dataclass(frozen=True)
class TrialStatistics:
    """Statistic per detector for one trial; None marks a frame that stayed undecidable"""
    trial: int
    statistics: Dict[str, Optional[float]]
    redraws: int
    clamped: int


def _evaluate_trial(batch: TrialBatch, trial: int, registry) -> TrialStatistics:
    wants_ev_css = DetectorId.EV_CSS.value in batch.detector_ids
    redraws = 0
    clamped = 0
    ev_css_value: Optional[float] = None

    for attempt in range(MAX_REDRAWS + 1):
        drawn = synthesize_frame(batch.scenario, batch.hypothesis, batch.master_seed, trial,
                                 attempt=attempt, purpose=batch.purpose)
        if not wants_ev_css:
            break
        try:
            decomposition = ccst_decomposition(drawn.frame, batch.feature)
        except UndecidableFrameError as e:
            redraws += 1
            logger.debug("trial %d attempt %d undecidable: %s", trial, attempt, e)
            continue
        ev_css_value = decomposition.statistic
        clamped = decomposition.clamped
        break

    statistics: Dict[str, Optional[float]] = {}
    for detector_id in batch.detector_ids:
        if detector_id == DetectorId.EV_CSS.value:
            statistics[detector_id] = ev_css_value
        elif detector_id == PERFECT_CSI_ID:
            statistics[detector_id] = mrc_msdf_statistic(drawn.frame, batch.feature, drawn.h_soi)
        else:
            statistics[detector_id] = registry[DetectorId(detector_id)](drawn.frame, batch.feature)
    return TrialStatistics(trial=trial, statistics=statistics, redraws=redraws, clamped=clamped)


def evaluate_batch(batch: TrialBatch) -> List[TrialStatistics]:
    """Evaluate every trial of a batch; picklable entry point for worker processes"""
    registry = statistic_registry()
    return [_evaluate_trial(batch, trial, registry) for trial in range(batch.start, batch.stop)]
