"""
Modified spectral density function (MSDF): energy-normalized, time-smoothed cyclic periodogram
"""
import logging
import math
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..config.settings import MSDF_FFT_SIZE, MSDF_OVERLAP, MSDF_RESOLUTION_FRACTION
from ..numerics.fourier import fft
from ..sigmodel.bpsk import SampleStream, carrier
from ..utils.errors import ContractError
from ..utils.helpers import is_power_of_two, mean_power, next_power_of_two

logger = logging.getLogger(__name__)


def padded_length(n_fft: int, sample_rate_hz: float, resolution_hz: float) -> int:
    """Smallest power-of-two FFT length >= n_fft whose bin spacing is <= resolution_hz"""
    return next_power_of_two(max(n_fft, math.ceil(sample_rate_hz / resolution_hz - 1e-9)))


def cyclic_periodogram(stream: SampleStream, alpha_hz: float, n_fft: int = MSDF_FFT_SIZE,
                       resolution_hz: Optional[float] = None, conjugate: bool = True,
                       overlap: float = MSDF_OVERLAP) -> np.ndarray:
    """Block-averaged S^alpha(f) over overlapping rectangular blocks, normalized by energy per sample"""
    if not is_power_of_two(n_fft):
        raise ContractError(f"n_fft must be a power of two, got {n_fft}")
    fs = stream.sample_rate_hz
    if resolution_hz is None:
        resolution_hz = fs * MSDF_RESOLUTION_FRACTION
    if resolution_hz <= 0:
        raise ContractError(f"resolution_hz must be > 0, got {resolution_hz}")
    if len(stream) < n_fft:
        raise ContractError(f"stream of {len(stream)} samples is shorter than n_fft={n_fft}")
    if not 0.0 <= overlap < 1.0:
        raise ContractError(f"overlap must lie in [0, 1), got {overlap}")

    n_pad = padded_length(n_fft, fs, resolution_hz)
    hop = max(1, int(round(n_fft * (1.0 - overlap))))
    n = np.arange(len(stream))

    # u(n) = x(n) e^{-j pi alpha n T_s} so that U(f) = X(f + alpha/2)
    up = stream.data * carrier(-0.5 * alpha_hz, n, fs)
    up_blocks = sliding_window_view(up, n_fft)[::hop]
    spectrum_up = fft(np.pad(up_blocks, ((0, 0), (0, n_pad - n_fft))), axis=-1)

    if conjugate:
        # X(alpha/2 - f) = U(-f)
        mirror = (-np.arange(n_pad)) % n_pad
        products = spectrum_up * spectrum_up[:, mirror]
    else:
        down = stream.data * carrier(0.5 * alpha_hz, n, fs)
        down_blocks = sliding_window_view(down, n_fft)[::hop]
        spectrum_down = fft(np.pad(down_blocks, ((0, 0), (0, n_pad - n_fft))), axis=-1)
        products = spectrum_up * spectrum_down.conj()

    energy = mean_power(stream.data)
    if energy == 0.0:
        return np.zeros(n_pad, dtype=np.complex128)
    return products.mean(axis=0) / (n_fft * energy)


def msdf_peak(stream: SampleStream, alpha_hz: float, n_fft: int = MSDF_FFT_SIZE,
              resolution_hz: Optional[float] = None, conjugate: bool = True,
              overlap: float = MSDF_OVERLAP) -> float:
    """max_f |S^alpha(f)|"""
    spectrum = cyclic_periodogram(stream, alpha_hz, n_fft, resolution_hz, conjugate, overlap)
    return float(np.max(np.abs(spectrum)))
