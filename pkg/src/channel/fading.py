"""
Quasi-static flat Rayleigh fading per antenna
"""
import numpy as np

from ..numerics.random import SeedLike, as_generator, complex_gaussian
from ..utils.errors import ContractError


class ChannelRealization:
    """Per-antenna complex gains h = [r_1 e^{j theta_1}, ..., r_M e^{j theta_M}]"""

    def __init__(self, gains):
        gains = np.atleast_1d(np.asarray(gains, dtype=np.complex128))
        if gains.ndim != 1 or gains.shape[0] < 1:
            raise ContractError(f"channel needs at least one antenna gain, got shape {gains.shape}")
        if not np.all(np.isfinite(gains)):
            raise ContractError("channel gains must be finite")
        self.gains = gains

    @property
    def n_antennas(self) -> int:
        return self.gains.shape[0]

    def __repr__(self) -> str:
        return f"ChannelRealization({np.array2string(self.gains, precision=3)})"


def draw_rayleigh(m: int, seed: SeedLike) -> ChannelRealization:
    """Unit mean-square Rayleigh magnitudes with uniform phases, independent per antenna"""
    if m < 1:
        raise ContractError(f"M must be >= 1, got {m}")
    return ChannelRealization(complex_gaussian(as_generator(seed), m))
