"""
EV-CSS: eigenvalue-based cyclostationary spectrum sensing.

The cyclic correlation significance test (CCST) whitens the cyclic covariance
with the sample covariance and takes the squared canonical correlations mu_i
between x(n) and its frequency-shifted (conjugated) lag. Under H0 the statistic
T = -N sum ln(1 - mu_i) is asymptotically chi2 with M^2 (non-conjugate) or
M(M+1) (conjugate) degrees of freedom, whatever the noise power or N.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import numpy as np

from ..channel.frame import IQFrame
from ..config.settings import MU_CEILING
from ..cyclostat.correlation import cov_lag, cyclic_cov
from ..numerics.chi2 import chi2_quantile
from ..numerics.linalg import cholesky, solve_linear, svd
from ..sigmodel.bpsk import CyclicFeature
from ..utils.errors import ConfigurationError, SingularMatrixError, UndecidableFrameError
from .base import DetectionResult, DetectorId

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvCssConfig:
    """Feature and target false-alarm rate; deliberately carries no SNR or noise-power knowledge"""
    feature: CyclicFeature
    target_pfa: float = 0.1

    def __post_init__(self):
        if not 0.0 < self.target_pfa < 1.0:
            raise ConfigurationError(f"target_pfa must lie in (0, 1), got {self.target_pfa}")


@dataclass(frozen=True)
class CcstDecomposition:
    statistic: float
    singular_values: np.ndarray
    raw_singular_values: np.ndarray
    clamped: int


def degrees_of_freedom(m: int, conjugate: bool) -> int:
    """M(M+1) for the conjugate test, M^2 otherwise"""
    return m * (m + 1) if conjugate else m * m


@lru_cache(maxsize=None)
def analytic_threshold(m: int, conjugate: bool, target_pfa: float) -> float:
    """gamma with P(chi2_k > gamma) = target_pfa"""
    return chi2_quantile(1.0 - target_pfa, degrees_of_freedom(m, conjugate))


def ccst_decomposition(frame: IQFrame, feature: CyclicFeature) -> CcstDecomposition:
    """CCST singular values and statistic, with clamp diagnostics"""
    cov = cov_lag(frame, 0)
    cyc = cyclic_cov(frame, feature.alpha_hz, feature.lag_samples, feature.conjugate)

    try:
        factor = cholesky(cov)
        left = solve_linear(factor, cyc)
        # the partner sequence x*(n - tau) has covariance conj(R_xx)
        partner = factor.conj() if feature.conjugate else factor
        coherence = solve_linear(partner, left.conj().T).conj().T
    except SingularMatrixError as e:
        raise UndecidableFrameError(f"sample covariance is singular: {e}") from e

    canonical = coherence @ coherence.conj().T
    raw = svd(canonical).singular_values
    mu = np.clip(raw, 0.0, MU_CEILING)
    clamped = int(np.count_nonzero(raw > MU_CEILING))
    if clamped:
        logger.debug("CCST clamped %d canonical correlation(s) at %.12f", clamped, MU_CEILING)

    statistic = float(-frame.n_samples * np.sum(np.log1p(-mu)))
    return CcstDecomposition(statistic=max(statistic, 0.0), singular_values=mu,
                             raw_singular_values=raw, clamped=clamped)


def ccst_statistic(frame: IQFrame, feature: CyclicFeature) -> Tuple[float, Tuple[float, ...]]:
    """T = -N ln prod(1 - mu_i) and the clamped mu_i"""
    result = ccst_decomposition(frame, feature)
    return result.statistic, tuple(float(mu) for mu in result.singular_values)


def ev_css_detect(frame: IQFrame, config: EvCssConfig) -> DetectionResult:
    """Compare the CCST statistic with the chi2 CFAR threshold"""
    statistic, mu = ccst_statistic(frame, config.feature)
    threshold = analytic_threshold(frame.n_antennas, config.feature.conjugate, config.target_pfa)
    return DetectionResult.from_statistic(statistic, threshold, DetectorId.EV_CSS, mu)
