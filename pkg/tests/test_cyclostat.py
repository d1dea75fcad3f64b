#!/usr/bin/env python3
"""
Tests for cyclic correlation estimators and the MSDF
"""
import sys
import os
import unittest

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel.frame import IQFrame
from src.channel.noise import NoiseSpec, gen_noise
from src.cyclostat.correlation import (cov_lag, cyclic_autocorrelation, cyclic_cov, cyclic_cov_pair)
from src.cyclostat.msdf import cyclic_periodogram, msdf_peak, padded_length
from src.numerics.random import complex_gaussian, make_rng
from src.sigmodel.bpsk import SampleStream, SignalSpec, carrier, gen_bpsk, soi_feature
from src.utils.errors import ContractError


class TestCorrelation(unittest.TestCase):
    """Test covariance and cyclic covariance estimates"""

    def setUp(self):
        self.spec = SignalSpec()
        self.frame = gen_noise(3, 2000, NoiseSpec(variance=1.0, rho=0.5), make_rng(8))

    def test_cov_hermitian(self):
        cov = cov_lag(self.frame, 0)
        np.testing.assert_allclose(cov, cov.conj().T, atol=1e-14)
        self.assertTrue(np.all(np.linalg.eigvalsh(cov) > 0))

    def test_zero_alpha_matches_covariance(self):
        np.testing.assert_array_equal(cyclic_cov(self.frame, 0.0, 2, conjugate=False), cov_lag(self.frame, 2))

    def test_conjugate_is_symmetric_at_zero_lag(self):
        cyc = cyclic_cov(self.frame, 160e3, 0, conjugate=True)
        np.testing.assert_allclose(cyc, cyc.T, atol=1e-14)

    def test_lag_contract(self):
        with self.assertRaises(ContractError):
            cov_lag(self.frame, 2000)
        with self.assertRaises(ContractError):
            cyclic_cov(self.frame, 1.0, -1, conjugate=True)

    def test_tone(self):
        """A carrier at f_c has unit conjugate cyclic autocorrelation at 2 f_c"""
        n = np.arange(4000)
        tone = carrier(self.spec.carrier_freq_hz, n, self.spec.sample_rate_hz)
        value = cyclic_autocorrelation(tone, 2 * self.spec.carrier_freq_hz, self.spec.sample_rate_hz, 0, True)
        self.assertAlmostEqual(abs(value), 1.0, places=10)

    def test_bpsk_feature_present(self):
        soi = gen_bpsk(self.spec, 8000, seed=2)
        noise = complex_gaussian(make_rng(3), 8000)
        feature = cyclic_autocorrelation(soi.data, 160e3, self.spec.sample_rate_hz, 0, True)
        absent = cyclic_autocorrelation(noise, 160e3, self.spec.sample_rate_hz, 0, True)
        self.assertAlmostEqual(abs(feature), 1.0, places=6)
        self.assertLess(abs(absent), 0.05)

    def test_bpsk_non_conjugate_carrier_feature_absent(self):
        """2 f_c lives only in the conjugate correlation"""
        plain, conjugate = [], []
        for seed in range(10):
            frame = IQFrame(gen_bpsk(self.spec, 4000, seed=seed).data[np.newaxis, :], self.spec.sample_rate_hz)
            for lag in (0, 4):
                plain.append(abs(cyclic_cov(frame, 160e3, lag, conjugate=False)[0, 0]))
            conjugate.append(abs(cyclic_cov(frame, 160e3, 0, conjugate=True)[0, 0]))
        self.assertLess(np.mean(plain), 0.05)
        self.assertGreater(np.mean(conjugate), 0.5)

    def test_pair(self):
        feature = soi_feature(self.spec, lag=1)
        pair = cyclic_cov_pair(self.frame, feature)
        self.assertEqual(pair.n_used, 1999)
        self.assertTrue(pair.conjugate)
        np.testing.assert_array_equal(pair.cov, cov_lag(self.frame, 1))
        np.testing.assert_array_equal(pair.cyc_cov, cyclic_cov(self.frame, 160e3, 1, True))


class TestMsdf(unittest.TestCase):
    """Test the energy-normalized cyclic periodogram"""

    def setUp(self):
        self.spec = SignalSpec()
        self.fs = self.spec.sample_rate_hz

    def test_padded_length(self):
        self.assertEqual(padded_length(128, self.fs, self.fs / 100), 128)
        self.assertEqual(padded_length(128, self.fs, self.fs / 1000), 1024)

    def test_feature_stands_out(self):
        soi = gen_bpsk(self.spec, 4000, seed=6)
        noise = SampleStream(complex_gaussian(make_rng(6), 4000), self.fs)
        self.assertGreater(msdf_peak(soi, 160e3), 5.0 * msdf_peak(noise, 160e3))

    def test_scale_invariant(self):
        x = SampleStream(complex_gaussian(make_rng(9), 4000), self.fs)
        self.assertAlmostEqual(msdf_peak(x.scaled(1e3), 160e3), msdf_peak(x, 160e3), places=9)

    def test_non_conjugate(self):
        soi = gen_bpsk(self.spec, 4000, seed=6)
        spectrum = cyclic_periodogram(soi, self.spec.symbol_rate_hz, conjugate=False)
        self.assertEqual(spectrum.shape, (256,))
        self.assertTrue(np.all(np.isfinite(spectrum)))

    def test_zero_stream(self):
        self.assertEqual(msdf_peak(SampleStream(np.zeros(256), self.fs), 160e3), 0.0)

    def test_contracts(self):
        x = SampleStream(np.ones(256), self.fs)
        with self.assertRaises(ContractError):
            cyclic_periodogram(x, 160e3, n_fft=100)
        with self.assertRaises(ContractError):
            cyclic_periodogram(SampleStream(np.ones(64), self.fs), 160e3)
        with self.assertRaises(ContractError):
            cyclic_periodogram(x, 160e3, overlap=1.0)
        with self.assertRaises(ContractError):
            cyclic_periodogram(x, 160e3, resolution_hz=0.0)


if __name__ == '__main__':
    unittest.main()
