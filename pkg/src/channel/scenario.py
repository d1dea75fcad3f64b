"""
Generative scenarios: one seeded H0/H1 sensing frame per trial
"""
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from ..config.settings import INTERFERER_OVERLAP, N_ANTENNAS, N_SAMPLES
from ..numerics.random import PURPOSE_EVALUATE, stream_rng
from ..sigmodel.bpsk import SignalSpec, gen_bpsk, interferer_spec
from ..utils.errors import ConfigurationError
from .fading import ChannelRealization, draw_rayleigh
from .frame import IQFrame, compose_frame
from .noise import NoiseSpec, gen_noise

H0 = 0
H1 = 1


@dataclass(frozen=True)
class Scenario:
    """Everything needed to draw a trial frame under either hypothesis"""
    n_antennas: int = N_ANTENNAS
    n_samples: int = N_SAMPLES
    noise_variance: float = 1.0
    rho: float = 0.0
    snr_db: float = 0.0
    sir_db: Optional[float] = None
    signal: SignalSpec = field(default_factory=SignalSpec)
    interferer_overlap: float = INTERFERER_OVERLAP

    def __post_init__(self):
        if self.n_antennas < 1:
            raise ConfigurationError(f"M must be >= 1, got {self.n_antennas}")
        if self.n_samples < 1:
            raise ConfigurationError(f"N must be >= 1, got {self.n_samples}")
        # validates variance and rho
        self.noise

    @property
    def noise(self) -> NoiseSpec:
        return NoiseSpec(variance=self.noise_variance, rho=self.rho)

    @property
    def has_interferer(self) -> bool:
        return self.sir_db is not None


class TrialFrame(NamedTuple):
    frame: IQFrame
    h_soi: ChannelRealization


def synthesize_frame(scenario: Scenario, hypothesis: int, master_seed: int, trial_index: int,
                     attempt: int = 0, purpose: int = PURPOSE_EVALUATE) -> TrialFrame:
    """Fresh fading, noise and sources for one trial; the SOI is present only under H1"""
    m, n = scenario.n_antennas, scenario.n_samples
    fs = scenario.signal.sample_rate_hz

    def rng(label: str) -> np.random.Generator:
        return stream_rng(master_seed, trial_index, label, hypothesis=hypothesis,
                          attempt=attempt, purpose=purpose)

    noise = gen_noise(m, n, scenario.noise, rng("noise"), sample_rate_hz=fs)
    h_soi = draw_rayleigh(m, rng("soi_channel"))

    soi = None
    if hypothesis == H1:
        soi = gen_bpsk(scenario.signal, n, rng("soi"))

    interferer = h_int = None
    if scenario.has_interferer:
        phase = rng("interferer_phase").uniform(0.0, 2.0 * np.pi)
        spec = interferer_spec(scenario.signal, scenario.interferer_overlap, phase_rad=phase)
        interferer = gen_bpsk(spec, n, rng("interferer"))
        h_int = draw_rayleigh(m, rng("interferer_channel"))

    frame = compose_frame(soi, h_soi, interferer, h_int, noise, scenario.snr_db, scenario.sir_db)
    return TrialFrame(frame, h_soi)
