"""
Declarative experiment descriptions: kinds, configuration, grid cells and trial records
"""
import itertools
import re
from dataclasses import dataclass, fields, replace
from enum import Enum
from typing import Any, List, Mapping, Optional, Tuple

from ..channel.scenario import Scenario
from ..config.settings import (CALIBRATION_TRIALS, CARRIER_FREQ_HZ, CFAR_M_GRID, DETECTOR_IDS,
                               FEATURE_LAG, FEATURE_SCAN_MAX_LAG, HIST_BINS, INTERFERENCE_SNR_DB,
                               INTERFERER_OVERLAP, M_GRID, MASTER_SEED, MIN_TRIALS, MSDF_FFT_SIZE,
                               N_ANTENNAS, N_GRID, N_SAMPLES, NOISE_VARIANCES, PD_TRIALS, PERFECT_CSI_ID,
                               PFA_VERIFY_TRIALS, ROC_PFA_GRID, ROC_SNR_DB, SAMPLE_RATE_HZ,
                               SIR_GRID_DB, SNR_GRID_DB, SYMBOL_PERIOD_S, TARGET_PFA,
                               TRANSITION_SNR_DB)
from ..detectors.base import DetectorId, parse_detector_id
from ..sigmodel.bpsk import CyclicFeature, SignalSpec, best_lag, soi_feature
from ..utils.errors import ConfigurationError


class ExperimentKind(str, Enum):
    PFA_VERIFY = "pfa_verify"
    STATISTIC_HIST = "statistic_hist"
    ROC = "roc"
    PD_VS_SNR = "pd_vs_snr"
    PD_VS_N = "pd_vs_n"
    INTERFERENCE = "interference"
    PD_VS_M = "pd_vs_m"

    def __str__(self) -> str:
        return self.value

    @property
    def has_h1(self) -> bool:
        """False for the H0-only CFAR kinds"""
        return self not in (ExperimentKind.PFA_VERIFY, ExperimentKind.STATISTIC_HIST)


_CFAR_KINDS = (ExperimentKind.PFA_VERIFY, ExperimentKind.STATISTIC_HIST)

_DEFAULT_SNR = {
    ExperimentKind.ROC: (ROC_SNR_DB,),
    ExperimentKind.PD_VS_SNR: tuple(float(s) for s in SNR_GRID_DB),
    ExperimentKind.PD_VS_N: (TRANSITION_SNR_DB,),
    ExperimentKind.INTERFERENCE: (INTERFERENCE_SNR_DB,),
    ExperimentKind.PD_VS_M: (TRANSITION_SNR_DB,),
}


@dataclass(frozen=True)
class Cell:
    """One point of an experiment grid"""
    m: int
    n: int
    snr_db: Optional[float]
    rho: float
    sir_db: Optional[float]
    noise_variance: float

    def sort_key(self) -> Tuple[float, ...]:
        return tuple(float("-inf") if v is None else float(v)
                     for v in (self.m, self.n, self.snr_db, self.rho, self.sir_db))

    def label(self) -> str:
        parts = [f"M={self.m}", f"N={self.n}"]
        if self.snr_db is not None:
            parts.append(f"SNR={self.snr_db:g}dB")
        parts.append(f"rho={self.rho:g}")
        if self.sir_db is not None:
            parts.append(f"SIR={self.sir_db:g}dB")
        parts.append(f"var={self.noise_variance:g}")
        return " ".join(parts)


@dataclass(frozen=True)
class TrialRecord:
    """One detector's outcome on one Monte Carlo trial"""
    experiment: str
    detector: str
    m: int
    n: int
    snr_db: Optional[float]
    rho: float
    sir_db: Optional[float]
    hypothesis: int
    trial: int
    statistic: Optional[float]
    threshold: float
    decision: bool
    noise_variance: float = 1.0


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep description; grids and the lag left as None take the kind's defaults in resolved()"""
    experiment_kind: ExperimentKind
    detectors: Optional[Tuple[str, ...]] = None
    m: int = N_ANTENNAS
    n: int = N_SAMPLES
    snr_db: Optional[Tuple[float, ...]] = None
    pfa: float = TARGET_PFA
    rho: Tuple[float, ...] = (0.0,)
    sir_db: Tuple[float, ...] = tuple(float(s) for s in SIR_GRID_DB)
    n_trials: Optional[int] = None
    master_seed: int = MASTER_SEED
    n_grid: Tuple[int, ...] = N_GRID
    m_grid: Optional[Tuple[int, ...]] = None
    noise_variance: float = 1.0
    noise_variances: Tuple[float, ...] = NOISE_VARIANCES
    roc_pfa_grid: Tuple[float, ...] = ROC_PFA_GRID
    calibration_trials: int = CALIBRATION_TRIALS
    hist_bins: int = HIST_BINS
    conjugate: bool = True
    lag: Optional[int] = None
    carrier_freq_hz: float = CARRIER_FREQ_HZ
    symbol_period_s: float = SYMBOL_PERIOD_S
    sample_rate_hz: float = SAMPLE_RATE_HZ
    interferer_overlap: float = INTERFERER_OVERLAP
    workers: Optional[int] = None
    perfect_csi: bool = False

    @classmethod
    def from_mapping(cls, kind, values: Mapping[str, Any]) -> "ExperimentConfig":
        """Build from string or typed values keyed by field name"""
        kind = parse_kind(kind)
        known = {f.name: f for f in fields(cls)}
        kwargs = {}
        for key, raw in values.items():
            key = key.strip().lower()
            if key == "experiment_kind":
                continue
            if key not in known:
                raise ConfigurationError(f"unknown configuration key {key!r}")
            if raw is None:
                continue
            kwargs[key] = _PARSERS[key](key, raw)
        return cls(experiment_kind=kind, **kwargs).resolved()

    def resolved(self) -> "ExperimentConfig":
        """Fill kind-dependent defaults and validate"""
        kind = self.experiment_kind
        updates = {}
        if self.detectors is None:
            updates["detectors"] = (DetectorId.EV_CSS.value,) if kind in _CFAR_KINDS else DETECTOR_IDS
        if self.snr_db is None:
            updates["snr_db"] = _DEFAULT_SNR.get(kind, (ROC_SNR_DB,))
        if self.m_grid is None:
            updates["m_grid"] = CFAR_M_GRID if kind in _CFAR_KINDS else M_GRID
        if self.n_trials is None:
            updates["n_trials"] = PFA_VERIFY_TRIALS if kind in _CFAR_KINDS else PD_TRIALS
        if self.lag is None:
            updates["lag"] = FEATURE_LAG if self.conjugate else best_lag(
                self.signal, self._symbol_rate_feature(0), FEATURE_SCAN_MAX_LAG)
        config = replace(self, **updates)
        config.validate()
        return config

    def validate(self) -> None:
        """Raise ConfigurationError on any invalid field"""
        if (self.detectors is None or self.snr_db is None or self.m_grid is None or self.n_trials is None
                or self.lag is None):
            raise ConfigurationError("configuration has unresolved defaults")
        if not self.detectors:
            raise ConfigurationError("at least one detector is required")
        for detector in self.detectors:
            parse_detector_id(detector)
        if (self.experiment_kind == ExperimentKind.STATISTIC_HIST
                and DetectorId.EV_CSS.value not in {parse_detector_id(d).value for d in self.detectors}):
            raise ConfigurationError("statistic_hist needs the ev-css detector")
        for name in ("snr_db", "rho", "n_grid", "m_grid", "noise_variances", "roc_pfa_grid"):
            if not getattr(self, name):
                raise ConfigurationError(f"{name} grid must not be empty")
        if self.experiment_kind == ExperimentKind.INTERFERENCE and not self.sir_db:
            raise ConfigurationError("sir_db grid must not be empty")
        if self.n_trials < MIN_TRIALS:
            raise ConfigurationError(f"n_trials must be >= {MIN_TRIALS}, got {self.n_trials}")
        if not 0.0 < self.pfa < 1.0:
            raise ConfigurationError(f"pfa must lie in (0, 1), got {self.pfa}")
        if any(not 0.0 < p < 1.0 for p in self.roc_pfa_grid):
            raise ConfigurationError("roc_pfa_grid values must lie in (0, 1)")
        if self.calibration_trials < 10.0 / self.pfa - 1e-9:
            raise ConfigurationError(
                f"calibration_trials must be >= 10/pfa = {10.0 / self.pfa:g}, got {self.calibration_trials}")
        if self.master_seed < 0:
            raise ConfigurationError(f"master_seed must be >= 0, got {self.master_seed}")
        if self.hist_bins < 1:
            raise ConfigurationError(f"hist_bins must be >= 1, got {self.hist_bins}")
        if self.lag < 0:
            raise ConfigurationError(f"lag must be >= 0, got {self.lag}")
        if self.workers is not None and self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if not 0.0 <= self.interferer_overlap <= 1.0:
            raise ConfigurationError(f"interferer_overlap must lie in [0, 1], got {self.interferer_overlap}")
        for m in self.m_values():
            if m < 1:
                raise ConfigurationError(f"M must be >= 1, got {m}")
        min_n = MSDF_FFT_SIZE if any(d != DetectorId.EV_CSS.value for d in self.detectors) else 1
        for n in self.n_values():
            if n < max(min_n, self.lag + 1):
                raise ConfigurationError(f"N={n} is too short (needs >= {max(min_n, self.lag + 1)})")
        # builds every scenario, which validates variances, rho and the signal
        for cell in self.cells():
            self.scenario(cell)

    @property
    def signal(self) -> SignalSpec:
        return SignalSpec(carrier_freq_hz=self.carrier_freq_hz, symbol_period_s=self.symbol_period_s,
                          sample_rate_hz=self.sample_rate_hz)

    @property
    def feature(self) -> CyclicFeature:
        """2 f_c conjugate feature, or the symbol-rate feature for the non-conjugate test"""
        if self.conjugate:
            return soi_feature(self.signal, self.lag)
        return self._symbol_rate_feature(self.lag)

    def _symbol_rate_feature(self, lag: int) -> CyclicFeature:
        return CyclicFeature(alpha_hz=self.signal.symbol_rate_hz, conjugate=False, lag_samples=lag)

    @property
    def evaluated_detectors(self) -> Tuple[str, ...]:
        """Registered detectors plus the perfect-CSI diagnostic when requested"""
        detectors = tuple(parse_detector_id(d).value for d in self.detectors)
        if self.perfect_csi:
            detectors += (PERFECT_CSI_ID,)
        return detectors

    def m_values(self) -> Tuple[int, ...]:
        kind = self.experiment_kind
        if kind in _CFAR_KINDS or kind == ExperimentKind.PD_VS_M:
            return tuple(self.m_grid)
        return (self.m,)

    def n_values(self) -> Tuple[int, ...]:
        if self.experiment_kind == ExperimentKind.PD_VS_N:
            return tuple(self.n_grid)
        return (self.n,)

    def cells(self) -> List[Cell]:
        """Grid cells in emission order"""
        kind = self.experiment_kind
        snr_values = tuple(self.snr_db) if kind.has_h1 else (None,)
        sir_values = tuple(self.sir_db) if kind == ExperimentKind.INTERFERENCE else (None,)
        variances = tuple(self.noise_variances) if kind in _CFAR_KINDS else (self.noise_variance,)
        return [Cell(m=m, n=n, snr_db=snr, rho=rho, sir_db=sir, noise_variance=var)
                for m, n, snr, rho, sir, var in itertools.product(
                    self.m_values(), self.n_values(), snr_values, self.rho, sir_values, variances)]

    def scenario(self, cell: Cell) -> Scenario:
        return Scenario(n_antennas=cell.m, n_samples=cell.n, noise_variance=cell.noise_variance,
                        rho=cell.rho, snr_db=0.0 if cell.snr_db is None else cell.snr_db,
                        sir_db=cell.sir_db, signal=self.signal,
                        interferer_overlap=self.interferer_overlap)


def parse_kind(value) -> ExperimentKind:
    """Accept 'pd-vs-snr', 'pd_vs_snr' or an ExperimentKind"""
    if isinstance(value, ExperimentKind):
        return value
    try:
        return ExperimentKind(str(value).strip().replace("-", "_"))
    except ValueError:
        known = ", ".join(k.value for k in ExperimentKind)
        raise ConfigurationError(f"unknown experiment kind {value!r} (known: {known})") from None


# --- value parsers for flat key = value configuration ---

def _split(raw) -> List[str]:
    if isinstance(raw, (list, tuple)):
        return [str(v) for v in raw]
    return [token for token in re.split(r"[,\s]+", str(raw).strip()) if token]


def _scalar(cast):
    def parse(key: str, raw):
        if isinstance(raw, (list, tuple)):
            if len(raw) != 1:
                raise ConfigurationError(f"{key} takes a single value, got {raw!r}")
            raw = raw[0]
        try:
            return cast(raw)
        except (TypeError, ValueError):
            raise ConfigurationError(f"{key}: cannot parse {raw!r}") from None
    return parse


def _grid(cast):
    def parse(key: str, raw):
        try:
            return tuple(cast(token) for token in _split(raw))
        except (TypeError, ValueError):
            raise ConfigurationError(f"{key}: cannot parse {raw!r}") from None
    return parse


def _int(raw) -> int:
    value = float(raw)
    if value != int(value):
        raise ValueError(raw)
    return int(value)


def _bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)


_PARSERS = {
    "detectors": _grid(str),
    "m": _scalar(_int),
    "n": _scalar(_int),
    "snr_db": _grid(float),
    "pfa": _scalar(float),
    "rho": _grid(float),
    "sir_db": _grid(float),
    "n_trials": _scalar(_int),
    "master_seed": _scalar(_int),
    "n_grid": _grid(_int),
    "m_grid": _grid(_int),
    "noise_variance": _scalar(float),
    "noise_variances": _grid(float),
    "roc_pfa_grid": _grid(float),
    "calibration_trials": _scalar(_int),
    "hist_bins": _scalar(_int),
    "conjugate": _scalar(_bool),
    "lag": _scalar(_int),
    "carrier_freq_hz": _scalar(float),
    "symbol_period_s": _scalar(float),
    "sample_rate_hz": _scalar(float),
    "interferer_overlap": _scalar(float),
    "workers": _scalar(_int),
    "perfect_csi": _scalar(_bool),
}
