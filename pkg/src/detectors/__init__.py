"""
EV-CSS and the MSDF baseline detectors
"""
from .base import DetectionResult, DetectorId, detector_statistic, parse_detector_id, statistic_registry
from .baselines import (bmrc_msdf_detect, blind_channel_estimate, egc_combine, egc_detect, mrc_combine,
                        mrc_msdf_detect, sum_msdf_detect)
from .calibration import calibrate_threshold, empirical_threshold, h0_statistics
from .evcss import EvCssConfig, analytic_threshold, ccst_decomposition, ccst_statistic, ev_css_detect

__all__ = [
    "DetectionResult", "DetectorId", "detector_statistic", "parse_detector_id", "statistic_registry",
    "bmrc_msdf_detect", "blind_channel_estimate", "egc_combine", "egc_detect", "mrc_combine",
    "mrc_msdf_detect", "sum_msdf_detect", "calibrate_threshold", "empirical_threshold", "h0_statistics",
    "EvCssConfig", "analytic_threshold", "ccst_decomposition", "ccst_statistic", "ev_css_detect",
]
