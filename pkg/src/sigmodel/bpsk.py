"""
BPSK signal-of-interest and interferer generation, plus the cyclic-feature catalog
"""
import logging
from dataclasses import dataclass, replace
from typing import List

import numpy as np

from ..config.settings import (CARRIER_FREQ_HZ, INTERFERER_OVERLAP, PROBE_SAMPLES, PROBE_SEED,
                               SAMPLE_RATE_HZ, SOI_POWER, SYMBOL_PERIOD_S)
from ..numerics.random import SeedLike, as_generator
from ..utils.errors import ConfigurationError, ContractError
from ..utils.helpers import mean_power

logger = logging.getLogger(__name__)

_OVERSAMPLING_TOL = 1e-9


@dataclass(frozen=True)
class SignalSpec:
    """Parametric BPSK source with rectangular NRZ pulses"""
    carrier_freq_hz: float = CARRIER_FREQ_HZ
    symbol_period_s: float = SYMBOL_PERIOD_S
    sample_rate_hz: float = SAMPLE_RATE_HZ
    power: float = SOI_POWER
    initial_phase_rad: float = 0.0

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ConfigurationError(f"sample_rate_hz must be > 0, got {self.sample_rate_hz}")
        if self.symbol_period_s <= 0:
            raise ConfigurationError(f"symbol_period_s must be > 0, got {self.symbol_period_s}")
        if self.carrier_freq_hz < 0:
            raise ConfigurationError(f"carrier_freq_hz must be >= 0, got {self.carrier_freq_hz}")
        if self.power < 0:
            raise ConfigurationError(f"power must be >= 0, got {self.power}")
        # validates integer oversampling
        self.samples_per_symbol

    @property
    def samples_per_symbol(self) -> int:
        ratio = self.symbol_period_s * self.sample_rate_hz
        rounded = int(round(ratio))
        if rounded < 1 or abs(ratio - rounded) > _OVERSAMPLING_TOL * max(1.0, ratio):
            raise ConfigurationError(
                f"symbol_period_s * sample_rate_hz = {ratio!r} is not a positive integer")
        return rounded

    @property
    def symbol_rate_hz(self) -> float:
        return 1.0 / self.symbol_period_s


@dataclass(frozen=True)
class CyclicFeature:
    """A cyclic frequency, whether it lives in the conjugate correlation, and its lag"""
    alpha_hz: float
    conjugate: bool = True
    lag_samples: int = 0

    def __post_init__(self):
        if self.lag_samples < 0:
            raise ConfigurationError(f"lag_samples must be >= 0, got {self.lag_samples}")

    def with_lag(self, lag: int) -> "CyclicFeature":
        return replace(self, lag_samples=lag)


class SampleStream:
    """A single finite complex sample stream"""

    def __init__(self, data, sample_rate_hz: float):
        data = np.asarray(data, dtype=np.complex128)
        if data.ndim != 1:
            raise ContractError(f"stream data must be 1-D, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ContractError("stream contains NaN or Inf samples")
        if sample_rate_hz <= 0:
            raise ContractError(f"sample_rate_hz must be > 0, got {sample_rate_hz}")
        self.data = data
        self.sample_rate_hz = float(sample_rate_hz)

    def __len__(self) -> int:
        return self.data.shape[0]

    @property
    def power(self) -> float:
        """Mean squared magnitude"""
        return mean_power(self.data)

    def scaled(self, factor: complex) -> "SampleStream":
        return SampleStream(self.data * factor, self.sample_rate_hz)


def carrier(freq_hz: float, n: np.ndarray, sample_rate_hz: float, phase_rad: float = 0.0) -> np.ndarray:
    """exp(j(2 pi f n T_s + phase)) with the cycle count reduced mod 1 per sample"""
    cycles = np.mod(freq_hz * n.astype(np.float64) / sample_rate_hz, 1.0)
    return np.exp(1j * (2.0 * np.pi * cycles + phase_rad))


def gen_bpsk(spec: SignalSpec, n_samples: int, seed: SeedLike) -> SampleStream:
    """Sampled BPSK: sqrt(P) b(floor(n/L)) exp(j(2 pi f_c n T_s + phi))"""
    if n_samples <= 0:
        raise ContractError(f"n_samples must be > 0, got {n_samples}")
    rng = as_generator(seed)
    sps = spec.samples_per_symbol
    n_symbols = -(-n_samples // sps)
    symbols = 2.0 * rng.integers(0, 2, size=n_symbols) - 1.0
    baseband = np.repeat(symbols, sps)[:n_samples]
    n = np.arange(n_samples)
    data = np.sqrt(spec.power) * baseband * carrier(spec.carrier_freq_hz, n, spec.sample_rate_hz,
                                                     spec.initial_phase_rad)
    return SampleStream(data, spec.sample_rate_hz)


def cyclic_features_bpsk(spec: SignalSpec) -> List[CyclicFeature]:
    """Cyclic frequencies k/T_b (non-conjugate) and +-2f_c + k/T_b (conjugate), k in {-1,0,1}"""
    rate = spec.symbol_rate_hz
    candidates = [(k * rate, False) for k in (-1, 0, 1)]
    candidates += [(sign * 2.0 * spec.carrier_freq_hz + k * rate, True)
                   for sign in (-1.0, 1.0) for k in (-1, 0, 1)]

    features = []
    seen = set()
    for alpha, conjugate in candidates:
        if alpha == 0.0 or abs(alpha) > spec.sample_rate_hz:
            continue
        key = (round(alpha, 6), conjugate)
        if key in seen:
            continue
        seen.add(key)
        features.append(CyclicFeature(alpha_hz=float(alpha), conjugate=conjugate))

    features.sort(key=lambda f: (f.conjugate, f.alpha_hz))
    return features


def soi_feature(spec: SignalSpec, lag: int = 0) -> CyclicFeature:
    """The conjugate feature at 2 f_c used by every detector"""
    return CyclicFeature(alpha_hz=2.0 * spec.carrier_freq_hz, conjugate=True, lag_samples=lag)


def best_lag(spec: SignalSpec, feature: CyclicFeature, max_lag: int,
             n_probe: int = PROBE_SAMPLES, seed: int = PROBE_SEED) -> int:
    """Lag in [0, max_lag] maximizing |cyclic autocorrelation| of a clean probe signal"""
    from ..cyclostat.correlation import cyclic_autocorrelation

    if max_lag < 0:
        raise ContractError(f"max_lag must be >= 0, got {max_lag}")
    if n_probe <= max_lag:
        raise ContractError(f"n_probe ({n_probe}) must exceed max_lag ({max_lag})")
    if max_lag == 0:
        return 0

    probe = gen_bpsk(spec, n_probe, seed)
    magnitudes = [abs(cyclic_autocorrelation(probe.data, feature.alpha_hz, spec.sample_rate_hz,
                                             lag, feature.conjugate))
                  for lag in range(max_lag + 1)]
    lag = int(np.argmax(magnitudes))
    logger.debug("best_lag alpha=%.1f Hz conj=%s -> %d (|R|=%.4f)",
                 feature.alpha_hz, feature.conjugate, lag, magnitudes[lag])
    return lag


def interferer_spec(soi: SignalSpec, overlap: float = INTERFERER_OVERLAP,
                    phase_rad: float = 0.0) -> SignalSpec:
    """Co-channel BPSK with the SOI's symbol rate whose main lobe overlaps the SOI's by `overlap`"""
    if not 0.0 <= overlap <= 1.0:
        raise ConfigurationError(f"overlap must lie in [0, 1], got {overlap}")
    main_lobe_hz = 2.0 / soi.symbol_period_s
    offset_hz = (1.0 - overlap) * main_lobe_hz
    return replace(soi, carrier_freq_hz=soi.carrier_freq_hz + offset_hz, initial_phase_rad=phase_rad)
