"""
Numerical kernels: dense complex linear algebra, chi-squared functions, FFT, seeded randomness
"""
from .chi2 import chi2_cdf, chi2_pdf, chi2_quantile, chi2_sf
from .fourier import fft, ifft
from .linalg import (ComplexMatrix, SvdResult, as_complex_matrix, cholesky, cholesky_toeplitz_rho,
                     condition_number, solve_linear, svd)
from .random import as_generator, complex_gaussian, make_rng, stream_rng

__all__ = [
    "ComplexMatrix", "SvdResult", "as_complex_matrix", "cholesky", "cholesky_toeplitz_rho",
    "condition_number", "solve_linear", "svd", "chi2_cdf", "chi2_pdf", "chi2_quantile", "chi2_sf",
    "fft", "ifft", "as_generator", "complex_gaussian", "make_rng", "stream_rng",
]
