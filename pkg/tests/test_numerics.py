#!/usr/bin/env python3
"""
Tests for the numerical kernels
"""
import sys
import os
import unittest

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.numerics.chi2 import chi2_cdf, chi2_pdf, chi2_quantile, chi2_sf
from src.numerics.fourier import fft, ifft
from src.numerics.linalg import (cholesky, cholesky_toeplitz_rho, condition_number, solve_linear, svd)
from src.numerics.random import PURPOSE_CALIBRATE, complex_gaussian, make_rng, stream_rng
from src.utils.errors import ContractError, DomainError, SingularMatrixError


def random_matrix(rng, m, n=None):
    n = m if n is None else n
    return rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))


class TestChiSquared(unittest.TestCase):
    """Test chi-squared quantiles and tails"""

    def test_cfar_thresholds(self):
        """Quantiles used as EV-CSS thresholds"""
        self.assertAlmostEqual(chi2_quantile(0.9, 6), 10.6446, places=4)
        self.assertAlmostEqual(chi2_quantile(0.9, 4), 7.7794, places=4)

    def test_round_trip(self):
        """cdf(quantile(p)) returns p"""
        for k in (1, 2, 4, 6, 12, 20):
            for p in (1e-4, 0.05, 0.5, 0.9, 0.999):
                self.assertAlmostEqual(chi2_cdf(chi2_quantile(p, k), k), p, delta=1e-7)

    def test_sf_complements_cdf(self):
        self.assertAlmostEqual(chi2_sf(10.6446, 6) + chi2_cdf(10.6446, 6), 1.0, places=12)
        self.assertAlmostEqual(chi2_sf(10.6446, 6), 0.1, places=4)

    def test_domain(self):
        """Out-of-domain arguments raise"""
        self.assertEqual(chi2_quantile(0.0, 4), 0.0)
        with self.assertRaises(DomainError):
            chi2_quantile(1.0, 4)
        with self.assertRaises(DomainError):
            chi2_quantile(-0.1, 4)
        with self.assertRaises(DomainError):
            chi2_sf(-1.0, 4)
        with self.assertRaises(ContractError):
            chi2_quantile(0.5, 0)

    def test_pdf(self):
        """chi2_2 is exponential with mean 2"""
        x = np.array([0.5, 2.0, 7.0])
        np.testing.assert_allclose(chi2_pdf(x, 2), 0.5 * np.exp(-x / 2.0), rtol=1e-12)


class TestFourier(unittest.TestCase):
    """Test FFT wrappers"""

    def test_matches_naive_dft(self):
        rng = np.random.default_rng(3)
        x = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        n = np.arange(64)
        naive = np.exp(-2j * np.pi * np.outer(n, n) / 64) @ x
        np.testing.assert_allclose(fft(x), naive, atol=1e-9)
        np.testing.assert_allclose(ifft(fft(x)), x, atol=1e-12)

    def test_power_of_two_only(self):
        with self.assertRaises(ContractError):
            fft(np.ones(100))
        fft(np.ones(1))


class TestLinearAlgebra(unittest.TestCase):
    """Test solve, SVD and Cholesky kernels"""

    def setUp(self):
        self.rng = np.random.default_rng(11)

    def test_solve(self):
        a = random_matrix(self.rng, 4)
        b = random_matrix(self.rng, 4, 3)
        np.testing.assert_allclose(a @ solve_linear(a, b), b, atol=1e-10)

    def test_solve_residual(self):
        """Backward-stable residual over random well-posed systems"""
        worst = 0.0
        for _ in range(1000):
            m = int(self.rng.integers(1, 9))
            a = random_matrix(self.rng, m)
            b = random_matrix(self.rng, m, 2)
            x = solve_linear(a, b)
            residual = np.linalg.norm(a @ x - b) / (np.linalg.norm(a) * np.linalg.norm(x))
            worst = max(worst, residual)
        self.assertLess(worst, 1e-12)

    def test_solve_singular(self):
        """Rank-deficient and ill-conditioned systems are refused"""
        with self.assertRaises(SingularMatrixError):
            solve_linear(np.zeros((3, 3)), np.eye(3))
        a = np.diag([1.0, 1e-14])
        with self.assertRaises(SingularMatrixError):
            solve_linear(a, np.eye(2))

    def test_svd_reconstruction(self):
        for m in (1, 2, 4, 8):
            a = random_matrix(self.rng, m)
            result = svd(a)
            np.testing.assert_allclose(result.reconstruct(), a, atol=1e-10)
            self.assertTrue(np.all(np.diff(result.singular_values) <= 0))

    def test_svd_unitary_factors(self):
        for m in (1, 2, 4, 8, 16, 64):
            result = svd(random_matrix(self.rng, m))
            for vectors in (result.left_vectors, result.right_vectors):
                error = np.linalg.norm(vectors.conj().T @ vectors - np.eye(m))
                self.assertLessEqual(error, 1e-10, msg=f"m={m}")

    def test_svd_contract(self):
        with self.assertRaises(ContractError):
            svd(np.ones((2, 3)))
        with self.assertRaises(ContractError):
            svd(np.eye(65))

    def test_cholesky_reconstruction(self):
        b = random_matrix(self.rng, 4)
        a = b @ b.conj().T + np.eye(4)
        factor = cholesky(a)
        np.testing.assert_allclose(factor @ factor.conj().T, a, atol=1e-12 * np.abs(a).max())
        np.testing.assert_allclose(np.triu(factor, 1), 0.0)

    def test_cholesky_singular(self):
        with self.assertRaises(SingularMatrixError):
            cholesky(np.ones((2, 2)))

    def test_toeplitz_factor(self):
        expected = np.array([[1.0, 0.0], [0.5, np.sqrt(0.75)]])
        np.testing.assert_allclose(cholesky_toeplitz_rho(2, 0.5), expected, atol=1e-15)
        np.testing.assert_allclose(cholesky_toeplitz_rho(3, 0.0), np.eye(3))
        with self.assertRaises(ContractError):
            cholesky_toeplitz_rho(2, 1.0)

    def test_condition_number(self):
        self.assertAlmostEqual(condition_number(np.diag([4.0, 2.0])), 2.0)
        self.assertEqual(condition_number(np.zeros((2, 2))), float("inf"))


class TestRandomStreams(unittest.TestCase):
    """Test the seed contract"""

    def test_reproducible(self):
        a = stream_rng(7, 12, "noise", hypothesis=1).standard_normal(5)
        b = stream_rng(7, 12, "noise", hypothesis=1).standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_streams_are_distinct(self):
        base = stream_rng(7, 12, "noise").standard_normal(5)
        for other in (stream_rng(7, 13, "noise"), stream_rng(7, 12, "soi"),
                      stream_rng(7, 12, "noise", hypothesis=1), stream_rng(7, 12, "noise", attempt=1),
                      stream_rng(7, 12, "noise", purpose=PURPOSE_CALIBRATE), stream_rng(8, 12, "noise")):
            self.assertFalse(np.array_equal(base, other.standard_normal(5)))

    def test_complex_gaussian_variance(self):
        z = complex_gaussian(make_rng(5), 200_000, variance=3.0)
        self.assertAlmostEqual(np.mean(np.abs(z) ** 2), 3.0, delta=0.05)
        self.assertAlmostEqual(abs(np.mean(z * z)), 0.0, delta=0.05)

    def test_negative_seed(self):
        with self.assertRaises(ValueError):
            make_rng(-1)


if __name__ == '__main__':
    unittest.main()
