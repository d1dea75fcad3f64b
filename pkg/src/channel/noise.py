"""
Spatially correlated complex Gaussian receiver noise
"""
import logging
from dataclasses import dataclass

import numpy as np

from ..config.settings import SAMPLE_RATE_HZ
from ..numerics.linalg import cholesky_toeplitz_rho
from ..numerics.random import SeedLike, as_generator, complex_gaussian
from ..utils.errors import ConfigurationError, ContractError
from .frame import IQFrame

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NoiseSpec:
    """Per-antenna variance and the spatial correlation coefficient rho"""
    variance: float = 1.0
    rho: float = 0.0

    def __post_init__(self):
        if not self.variance > 0:
            raise ConfigurationError(f"noise variance must be > 0, got {self.variance}")
        if not 0.0 <= self.rho <= 1.0:
            raise ConfigurationError(f"rho must lie in [0, 1], got {self.rho}")

    def covariance(self, m: int) -> np.ndarray:
        """sigma^2 rho^|i-j|"""
        idx = np.arange(m)
        return self.variance * self.rho ** np.abs(idx[:, None] - idx[None, :])


def gen_noise(m: int, n: int, spec: NoiseSpec, seed: SeedLike,
              sample_rate_hz: float = SAMPLE_RATE_HZ) -> IQFrame:
    """Temporally white noise with spatial covariance sigma^2 Toeplitz(rho^|i-j|)"""
    if m < 1 or n < 1:
        raise ContractError(f"noise frame needs M >= 1 and N >= 1, got {m}x{n}")
    rng = as_generator(seed)

    if spec.rho == 1.0:
        # fully correlated: one stream seen by every antenna
        common = complex_gaussian(rng, n, spec.variance)
        samples = np.tile(common, (m, 1))
    else:
        white = complex_gaussian(rng, (m, n))
        samples = np.sqrt(spec.variance) * (cholesky_toeplitz_rho(m, spec.rho) @ white)

    return IQFrame(samples, sample_rate_hz, noise_variance=spec.variance)
