"""
Utility functions for the spectrum sensing simulator
"""
import logging
import os
from typing import Optional

import numpy as np

from ..config.settings import WORKERS_ENV
from .errors import ConfigurationError

LOG_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


def db_to_linear(value_db: float) -> float:
    """Convert a power ratio in dB to linear scale"""
    return float(10.0 ** (value_db / 10.0))


def is_power_of_two(n: int) -> bool:
    """Check whether n is a positive power of two"""
    return n >= 1 and (n & (n - 1)) == 0


def next_power_of_two(n: int) -> int:
    """Smallest power of two >= n"""
    if n <= 1:
        return 1
    return 1 << (int(n) - 1).bit_length()


def mean_power(samples: np.ndarray) -> float:
    """Average |x|^2 over all samples"""
    if samples.size == 0:
        return 0.0
    return float(np.mean(np.abs(samples) ** 2))


def worker_count(requested: Optional[int] = None) -> int:
    """Resolve the worker count: explicit value, then environment, then core count"""
    if requested is not None:
        if requested < 1:
            raise ConfigurationError(f"workers must be >= 1, got {requested}")
        return requested
    env_value = os.environ.get(WORKERS_ENV)
    if env_value:
        try:
            workers = int(env_value)
        except ValueError:
            raise ConfigurationError(f"{WORKERS_ENV} must be an integer, got {env_value!r}") from None
        if workers < 1:
            raise ConfigurationError(f"{WORKERS_ENV} must be >= 1, got {workers}")
        return workers
    return os.cpu_count() or 1


def configure_logging(verbosity: int = 0) -> None:
    """Install a single stream handler on the package logger"""
    level = logging.INFO
    if verbosity > 0:
        level = logging.DEBUG
    elif verbosity < 0:
        level = logging.WARNING

    root = logging.getLogger("src")
    root.setLevel(level)
    if not any(getattr(h, "_cyclosense", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._cyclosense = True
        root.addHandler(handler)
