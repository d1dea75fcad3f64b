"""
Received multi-antenna IQ frames and their composition from sources, channels and noise
"""
import logging
from typing import Optional

import numpy as np

from ..sigmodel.bpsk import SampleStream
from ..utils.errors import ConfigurationError, ContractError, DimensionError
from ..utils.helpers import db_to_linear, mean_power
from .fading import ChannelRealization

logger = logging.getLogger(__name__)


class IQFrame:
    """M x N antenna-major complex samples: one sensing observation"""

    def __init__(self, samples, sample_rate_hz: float, noise_variance: Optional[float] = None):
        samples = np.asarray(samples, dtype=np.complex128)
        if samples.ndim == 1:
            samples = samples[np.newaxis, :]
        if samples.ndim != 2 or samples.shape[0] < 1 or samples.shape[1] < 1:
            raise ContractError(f"IQ frame must be M x N with M, N >= 1, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            raise ContractError("IQ frame contains NaN or Inf samples")
        if sample_rate_hz <= 0:
            raise ContractError(f"sample_rate_hz must be > 0, got {sample_rate_hz}")
        self.samples = samples
        self.sample_rate_hz = float(sample_rate_hz)
        self.noise_variance = noise_variance

    @property
    def n_antennas(self) -> int:
        return self.samples.shape[0]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[1]

    def stream(self, antenna: int) -> SampleStream:
        """One antenna's samples as a stream"""
        return SampleStream(self.samples[antenna], self.sample_rate_hz)

    def scaled(self, factor: complex) -> "IQFrame":
        variance = None
        if self.noise_variance is not None:
            variance = self.noise_variance * abs(factor) ** 2
        return IQFrame(self.samples * factor, self.sample_rate_hz, noise_variance=variance)

    def __repr__(self) -> str:
        return f"IQFrame(M={self.n_antennas}, N={self.n_samples}, fs={self.sample_rate_hz:g})"


def _check_stream(name: str, stream: SampleStream, frame: IQFrame) -> None:
    if len(stream) != frame.n_samples:
        raise DimensionError(f"{name} has {len(stream)} samples, noise frame has {frame.n_samples}")
    if stream.sample_rate_hz != frame.sample_rate_hz:
        raise DimensionError(
            f"{name} sample rate {stream.sample_rate_hz:g} differs from frame rate {frame.sample_rate_hz:g}")


def _check_channel(name: str, channel: Optional[ChannelRealization], frame: IQFrame) -> None:
    if channel is None:
        raise ConfigurationError(f"{name} is required when its source is present")
    if channel.n_antennas != frame.n_antennas:
        raise DimensionError(f"{name} has {channel.n_antennas} gains, frame has {frame.n_antennas} antennas")


def _scaled_source(stream: SampleStream, target_power: float) -> np.ndarray:
    power = stream.power
    if power == 0.0:
        return np.zeros(len(stream), dtype=np.complex128)
    return stream.data * np.sqrt(target_power / power)


def compose_frame(soi: Optional[SampleStream], h_soi: Optional[ChannelRealization],
                  interferer: Optional[SampleStream], h_int: Optional[ChannelRealization],
                  noise: IQFrame, snr_db: float, sir_db: Optional[float] = None) -> IQFrame:
    """x(n) = h_soi s(n) + h_int i(n) + eta(n) at per-antenna SNR snr_db and SIR sir_db"""
    if sir_db is not None and interferer is None:
        raise ConfigurationError("sir_db given without an interferer")
    if interferer is not None and sir_db is None:
        raise ConfigurationError("an interferer needs sir_db to set its power")

    variance = noise.noise_variance
    if variance is None:
        variance = mean_power(noise.samples)
        logger.debug("noise frame carries no nominal variance, using measured %.4g", variance)
    soi_power = variance * db_to_linear(snr_db)

    received = noise.samples.copy()
    if soi is not None:
        _check_stream("SOI", soi, noise)
        _check_channel("h_soi", h_soi, noise)
        received += np.outer(h_soi.gains, _scaled_source(soi, soi_power))
    if interferer is not None:
        _check_stream("interferer", interferer, noise)
        _check_channel("h_int", h_int, noise)
        int_power = soi_power * db_to_linear(-sir_db)
        received += np.outer(h_int.gains, _scaled_source(interferer, int_power))

    return IQFrame(received, noise.sample_rate_hz, noise_variance=variance)
