"""
Small dense complex linear algebra: LU solve, SVD and Cholesky factors
"""
import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ..config.settings import CONDITION_LIMIT, MAX_SVD_SIZE
from ..utils.errors import ContractError, DimensionError, SingularMatrixError

logger = logging.getLogger(__name__)

# Row-major complex128 ndarray of shape (rows, cols)
ComplexMatrix = np.ndarray

# LU pivot ratio above which the exact condition number is computed
_CHEAP_FLAG_RATIO = 1e6


@dataclass(frozen=True)
class SvdResult:
    """A = U diag(s) V^H with s descending"""
    singular_values: np.ndarray
    left_vectors: ComplexMatrix
    right_vectors: ComplexMatrix

    def reconstruct(self) -> ComplexMatrix:
        """Multiply the factors back together"""
        return (self.left_vectors * self.singular_values) @ self.right_vectors.conj().T


def as_complex_matrix(a, name: str = "matrix") -> ComplexMatrix:
    """Validate and convert to a finite 2-D complex128 array"""
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ContractError(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ContractError(f"{name} has non-finite entries")
    return arr


def _require_square(a: ComplexMatrix, name: str) -> None:
    if a.shape[0] != a.shape[1]:
        raise ContractError(f"{name} must be square, got {a.shape[0]}x{a.shape[1]}")


def condition_number(a) -> float:
    """Ratio of largest to smallest singular value (inf when singular)"""
    a = as_complex_matrix(a)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] == 0.0:
        return float("inf")
    return float(s[0] / s[-1])


def solve_linear(a, b) -> ComplexMatrix:
    """Solve A X = B through an LU factorization of A"""
    a = as_complex_matrix(a, "A")
    b = as_complex_matrix(b, "B")
    _require_square(a, "A")
    if b.shape[0] != a.shape[0]:
        raise DimensionError(f"A is {a.shape[0]}x{a.shape[0]} but B has {b.shape[0]} rows")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)

    pivots = np.abs(np.diag(lu))
    if pivots.min() == 0.0:
        raise SingularMatrixError("matrix is exactly singular")
    if pivots.max() / pivots.min() > _CHEAP_FLAG_RATIO:
        cond = condition_number(a)
        if cond > CONDITION_LIMIT:
            raise SingularMatrixError(f"condition estimate {cond:.3e} exceeds {CONDITION_LIMIT:.0e}")
        logger.debug("solve_linear: accepted ill-looking pivots, cond=%.3e", cond)

    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def svd(a) -> SvdResult:
    """Singular value decomposition of a square matrix"""
    a = as_complex_matrix(a, "A")
    _require_square(a, "A")
    if a.shape[0] > MAX_SVD_SIZE:
        raise ContractError(f"svd supports up to {MAX_SVD_SIZE}x{MAX_SVD_SIZE}, got {a.shape[0]}")
    u, s, vh = np.linalg.svd(a)
    return SvdResult(singular_values=s, left_vectors=u, right_vectors=vh.conj().T)


def cholesky(a) -> ComplexMatrix:
    """Lower-triangular L with L L^H = A for Hermitian positive-definite A"""
    a = as_complex_matrix(a, "A")
    _require_square(a, "A")
    hermitian = 0.5 * (a + a.conj().T)
    eig = np.linalg.eigvalsh(hermitian)
    if eig[-1] <= 0.0 or eig[0] <= eig[-1] / CONDITION_LIMIT:
        raise SingularMatrixError(
            f"matrix is not safely positive definite (eigenvalues {eig[0]:.3e}..{eig[-1]:.3e})")
    try:
        return np.linalg.cholesky(hermitian)
    except np.linalg.LinAlgError as e:
        raise SingularMatrixError(f"Cholesky factorization failed: {e}") from e


def cholesky_toeplitz_rho(m: int, rho: float) -> ComplexMatrix:
    """Cholesky factor of the Toeplitz matrix with entries rho^|i-j|"""
    if m < 1:
        raise ContractError(f"M must be >= 1, got {m}")
    if not 0.0 <= rho < 1.0:
        raise ContractError(f"rho must lie in [0, 1), got {rho}")
    toeplitz = scipy.linalg.toeplitz(rho ** np.arange(m))
    return np.linalg.cholesky(toeplitz).astype(np.complex128)
