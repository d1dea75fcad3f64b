"""
Seed contract for reproducible Monte Carlo trials.

Every random draw in the simulator comes from a Philox (counter-based) generator
keyed by (master_seed, purpose, trial_index, hypothesis, stream label, attempt).
Two trials never share a stream and a trial's draws do not depend on which
worker runs it or in which order trials complete.
"""
import zlib
from typing import Union

import numpy as np

SeedLike = Union[int, np.random.Generator]

# Purpose codes keep calibration, evaluation and probe draws disjoint
PURPOSE_EVALUATE = 0
PURPOSE_CALIBRATE = 1
PURPOSE_FRESH_H0 = 2


def label_code(label: str) -> int:
    """Stable 32-bit code for a stream label"""
    return zlib.crc32(label.encode("utf-8"))


def make_rng(seed: int, *spawn_key: int) -> np.random.Generator:
    """Philox generator for a seed and optional spawn key"""
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in spawn_key))
    return np.random.Generator(np.random.Philox(sequence))


def as_generator(seed: SeedLike) -> np.random.Generator:
    """Accept either an integer seed or a ready generator"""
    if isinstance(seed, np.random.Generator):
        return seed
    return make_rng(int(seed))


def stream_rng(master_seed: int, trial_index: int, label: str, hypothesis: int = 0,
               attempt: int = 0, purpose: int = PURPOSE_EVALUATE) -> np.random.Generator:
    """Independent generator for one labelled stream of one trial"""
    return make_rng(master_seed, purpose, trial_index, hypothesis, label_code(label), attempt)


def complex_gaussian(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    """Circularly symmetric complex Gaussian samples with E|z|^2 = variance"""
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
