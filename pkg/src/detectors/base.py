"""
Detection results and the detector registry
"""
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Tuple

from ..channel.frame import IQFrame
from ..sigmodel.bpsk import CyclicFeature
from ..utils.errors import ConfigurationError


class DetectorId(str, Enum):
    """Stable identifiers used by the CLI and CSV outputs"""
    EV_CSS = "ev-css"
    SUM_MSDF = "sum-msdf"
    EGC_MSDF = "egc-msdf"
    BMRC_MSDF = "bmrc-msdf"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class DetectionResult:
    """Statistic, threshold and the resulting H1 decision of one detector on one frame"""
    statistic: float
    threshold: float
    decision: bool
    detector_id: str
    singular_values: Tuple[float, ...] = ()

    @classmethod
    def from_statistic(cls, statistic: float, threshold: float, detector_id,
                       singular_values: Tuple[float, ...] = ()) -> "DetectionResult":
        return cls(statistic=float(statistic), threshold=float(threshold),
                   decision=bool(statistic > threshold), detector_id=str(detector_id),
                   singular_values=tuple(float(mu) for mu in singular_values))


StatisticFunction = Callable[[IQFrame, CyclicFeature], float]


def parse_detector_id(value) -> DetectorId:
    """Map a string to a registered detector identifier"""
    try:
        return DetectorId(str(value))
    except ValueError:
        known = ", ".join(d.value for d in DetectorId)
        raise ConfigurationError(f"unknown detector {value!r} (known: {known})") from None


def statistic_registry() -> Dict[DetectorId, StatisticFunction]:
    """Statistic function of every registered detector"""
    from .baselines import bmrc_msdf_statistic, egc_statistic, sum_msdf_statistic
    from .evcss import ccst_statistic

    return {
        DetectorId.EV_CSS: lambda frame, feature: ccst_statistic(frame, feature)[0],
        DetectorId.SUM_MSDF: sum_msdf_statistic,
        DetectorId.EGC_MSDF: egc_statistic,
        DetectorId.BMRC_MSDF: bmrc_msdf_statistic,
    }


def detector_statistic(detector_id, frame: IQFrame, feature: CyclicFeature) -> float:
    """Evaluate one registered detector's statistic on a frame"""
    return statistic_registry()[parse_detector_id(detector_id)](frame, feature)
