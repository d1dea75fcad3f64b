"""
MSDF-based multi-antenna baselines: SUM-MSDF, EGC-MSDF, BMRC-MSDF, and perfect-CSI MRC
"""
import logging

import numpy as np

from ..channel.fading import ChannelRealization
from ..channel.frame import IQFrame
from ..cyclostat.correlation import cyclic_autocorrelation, cyclic_cov
from ..cyclostat.msdf import msdf_peak
from ..numerics.linalg import svd
from ..sigmodel.bpsk import CyclicFeature, SampleStream
from ..utils.errors import DimensionError
from .base import DetectionResult, DetectorId

logger = logging.getLogger(__name__)


def _msdf(stream: SampleStream, feature: CyclicFeature) -> float:
    return msdf_peak(stream, feature.alpha_hz, conjugate=feature.conjugate)


# --- SUM-MSDF: post-combining ---

def sum_msdf_statistic(frame: IQFrame, feature: CyclicFeature) -> float:
    """Sum of the per-antenna MSDF peaks"""
    return float(sum(_msdf(frame.stream(k), feature) for k in range(frame.n_antennas)))


def sum_msdf_detect(frame: IQFrame, feature: CyclicFeature, threshold: float) -> DetectionResult:
    return DetectionResult.from_statistic(sum_msdf_statistic(frame, feature), threshold, DetectorId.SUM_MSDF)


# --- EGC-MSDF: co-phase, then sum ---

def _feature_strength(x: np.ndarray, feature: CyclicFeature, sample_rate_hz: float) -> float:
    return abs(cyclic_autocorrelation(x, feature.alpha_hz, sample_rate_hz,
                                      feature.lag_samples, feature.conjugate))


def estimate_phase_offsets(frame: IQFrame, feature: CyclicFeature) -> np.ndarray:
    """Phase of every antenna relative to antenna 0, estimated from cyclic correlations"""
    m = frame.n_antennas
    fs = frame.sample_rate_hz
    cyc = cyclic_cov(frame, feature.alpha_hz, feature.lag_samples, feature.conjugate)
    offsets = np.zeros(m)
    if m == 1:
        return offsets

    if not feature.conjugate:
        # R_k0 / R_00 ~ h_k / h_0, so its angle is phi_k - phi_0
        offsets[1:] = np.angle(cyc[1:, 0] * np.conj(cyc[0, 0]))
        return offsets

    # conjugate auto terms R_kk ~ h_k^2 carry 2 phi_k, so the half angle is ambiguous by pi
    combined = frame.samples[0].copy()
    reference = np.angle(cyc[0, 0])
    for k in range(1, m):
        half = 0.5 * (np.angle(cyc[k, k]) - reference)
        best_phase, best_strength = half, -1.0
        for candidate in (half, half + np.pi):
            trial = combined + np.exp(-1j * candidate) * frame.samples[k]
            strength = _feature_strength(trial, feature, fs)
            if strength > best_strength:
                best_phase, best_strength = candidate, strength
        offsets[k] = best_phase
        combined = combined + np.exp(-1j * best_phase) * frame.samples[k]
    return offsets


def egc_combine(frame: IQFrame, feature: CyclicFeature, align: bool = True) -> SampleStream:
    """Co-phase every antenna to antenna 0 and sum the raw samples"""
    if align:
        offsets = estimate_phase_offsets(frame, feature)
    else:
        offsets = np.zeros(frame.n_antennas)
    combined = np.exp(-1j * offsets) @ frame.samples
    return SampleStream(combined, frame.sample_rate_hz)


def egc_statistic(frame: IQFrame, feature: CyclicFeature) -> float:
    return _msdf(egc_combine(frame, feature), feature)


def egc_detect(frame: IQFrame, feature: CyclicFeature, threshold: float) -> DetectionResult:
    return DetectionResult.from_statistic(egc_statistic(frame, feature), threshold, DetectorId.EGC_MSDF)


# --- BMRC-MSDF: blind channel estimate from the cyclic covariance ---

def blind_channel_estimate(frame: IQFrame, feature: CyclicFeature) -> np.ndarray:
    """Dominant left singular vector of the cyclic covariance matrix (unit norm, arbitrary phase)"""
    cyc = cyclic_cov(frame, feature.alpha_hz, feature.lag_samples, feature.conjugate)
    return svd(cyc).left_vectors[:, 0]


def mrc_combine(frame: IQFrame, weights) -> SampleStream:
    """y(n) = w^H x(n) / ||w||"""
    weights = np.asarray(weights, dtype=np.complex128)
    if weights.shape != (frame.n_antennas,):
        raise DimensionError(f"{weights.shape[0]} combining weights for {frame.n_antennas} antennas")
    norm = np.linalg.norm(weights)
    if norm == 0.0:
        raise DimensionError("combining weights are all zero")
    return SampleStream(weights.conj() @ frame.samples / norm, frame.sample_rate_hz)


def bmrc_msdf_statistic(frame: IQFrame, feature: CyclicFeature) -> float:
    return _msdf(mrc_combine(frame, blind_channel_estimate(frame, feature)), feature)


def bmrc_msdf_detect(frame: IQFrame, feature: CyclicFeature, threshold: float) -> DetectionResult:
    return DetectionResult.from_statistic(bmrc_msdf_statistic(frame, feature), threshold, DetectorId.BMRC_MSDF)


def mrc_msdf_statistic(frame: IQFrame, feature: CyclicFeature, channel: ChannelRealization) -> float:
    """MRC with the true channel; diagnostic reference only"""
    return _msdf(mrc_combine(frame, channel.gains), feature)


def mrc_msdf_detect(frame: IQFrame, feature: CyclicFeature, threshold: float,
                    channel: ChannelRealization) -> DetectionResult:
    return DetectionResult.from_statistic(mrc_msdf_statistic(frame, feature, channel), threshold, "mrc-msdf")
