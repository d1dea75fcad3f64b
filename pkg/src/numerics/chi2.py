"""
Chi-squared distribution functions built on the regularized incomplete gamma function
"""
import numpy as np
import scipy.special
import scipy.stats

from ..utils.errors import ContractError, DomainError


def _check_dof(k: int) -> None:
    if k < 1:
        raise ContractError(f"degrees of freedom must be >= 1, got {k}")


def chi2_sf(x: float, k: int) -> float:
    """Survival function P(X > x) for X ~ chi2_k"""
    _check_dof(k)
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return float(scipy.special.gammaincc(0.5 * k, 0.5 * x))


def chi2_cdf(x: float, k: int) -> float:
    """Cumulative distribution P(X <= x) for X ~ chi2_k"""
    _check_dof(k)
    if x <= 0:
        return 0.0
    return float(scipy.special.gammainc(0.5 * k, 0.5 * x))


def chi2_quantile(p: float, k: int) -> float:
    """Inverse CDF: gamma such that CDF_{chi2_k}(gamma) = p"""
    _check_dof(k)
    if not 0.0 <= p < 1.0:
        raise DomainError(f"p must lie in [0, 1), got {p}")
    if p == 0.0:
        return 0.0
    return float(2.0 * scipy.special.gammaincinv(0.5 * k, p))


def chi2_pdf(x, k: int) -> np.ndarray:
    """Density of chi2_k evaluated elementwise"""
    _check_dof(k)
    return scipy.stats.chi2.pdf(np.asarray(x, dtype=float), k)
