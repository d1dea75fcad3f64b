"""
Lagged covariance and cyclic (cross-)correlation matrix estimators
"""
from dataclasses import dataclass

import numpy as np

from ..channel.frame import IQFrame
from ..sigmodel.bpsk import CyclicFeature
from ..utils.errors import ContractError


@dataclass(frozen=True)
class CyclicCovPair:
    """Covariance and cyclic covariance of one frame at (alpha_0, tau_0)"""
    cov: np.ndarray
    cyc_cov: np.ndarray
    conjugate: bool
    alpha_hz: float
    lag: int
    n_used: int


def _check_lag(lag: int, n: int) -> None:
    if not 0 <= lag < n:
        raise ContractError(f"lag must satisfy 0 <= lag < N={n}, got {lag}")


def cyclic_phase(alpha_hz: float, start: int, stop: int, sample_rate_hz: float) -> np.ndarray:
    """exp(-j 2 pi alpha n T_s) for absolute sample indices n in [start, stop)"""
    n = np.arange(start, stop, dtype=np.float64)
    cycles = np.mod(alpha_hz * n / sample_rate_hz, 1.0)
    return np.exp(-2j * np.pi * cycles)


def cov_lag(frame: IQFrame, lag: int) -> np.ndarray:
    """(1/N) sum_{n=lag}^{N-1} x(n) x^H(n-lag)"""
    x = frame.samples
    n = frame.n_samples
    _check_lag(lag, n)
    return x[:, lag:] @ x[:, :n - lag].conj().T / n


def cyclic_cov(frame: IQFrame, alpha_hz: float, lag: int, conjugate: bool) -> np.ndarray:
    """(1/N) sum_{n=lag}^{N-1} x(n) x^{H or T}(n-lag) exp(-j 2 pi alpha n T_s)"""
    x = frame.samples
    n = frame.n_samples
    _check_lag(lag, n)
    if alpha_hz == 0.0:
        lead = x[:, lag:]
    else:
        lead = x[:, lag:] * cyclic_phase(alpha_hz, lag, n, frame.sample_rate_hz)
    lagged = x[:, :n - lag]
    partner = lagged.T if conjugate else lagged.conj().T
    return lead @ partner / n


def cyclic_cov_pair(frame: IQFrame, feature: CyclicFeature) -> CyclicCovPair:
    """Both estimates at the feature's cyclic frequency and lag"""
    lag = feature.lag_samples
    return CyclicCovPair(
        cov=cov_lag(frame, lag),
        cyc_cov=cyclic_cov(frame, feature.alpha_hz, lag, feature.conjugate),
        conjugate=feature.conjugate,
        alpha_hz=feature.alpha_hz,
        lag=lag,
        n_used=frame.n_samples - lag,
    )


def cyclic_autocorrelation(x: np.ndarray, alpha_hz: float, sample_rate_hz: float,
                           lag: int, conjugate: bool) -> complex:
    """Scalar cyclic autocorrelation of a single stream"""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    _check_lag(lag, n)
    lead = x[lag:] * cyclic_phase(alpha_hz, lag, n, sample_rate_hz)
    lagged = x[:n - lag] if conjugate else x[:n - lag].conj()
    return complex(np.dot(lead, lagged) / n)
