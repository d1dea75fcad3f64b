"""
Power-of-two FFT wrappers with length contracts
"""
import numpy as np

from ..utils.errors import ContractError
from ..utils.helpers import is_power_of_two


def _check_length(x: np.ndarray, axis: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    if x.ndim == 0:
        raise ContractError("FFT input must be a sequence")
    n = x.shape[axis]
    if not is_power_of_two(n):
        raise ContractError(f"FFT length must be a power of two, got {n}")
    return x


def fft(x, axis: int = -1) -> np.ndarray:
    """Unnormalized DFT: X[k] = sum_n x[n] exp(-j 2 pi k n / N)"""
    return np.fft.fft(_check_length(x, axis), axis=axis)


def ifft(x, axis: int = -1) -> np.ndarray:
    """Inverse DFT with 1/N scaling"""
    return np.fft.ifft(_check_length(x, axis), axis=axis)
