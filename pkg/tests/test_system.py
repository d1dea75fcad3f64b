#!/usr/bin/env python3
"""
System integration tests for the cyclosense simulator
"""
import sys
import os
import tempfile
import time
import unittest

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.channel.iqfile import read_iq_frame, write_iq_frame
from src.channel.scenario import H0, H1, Scenario, synthesize_frame
from src.config.settings import N_SAMPLES, TARGET_PFA
from src.detectors.base import DetectorId, detector_statistic
from src.detectors.baselines import mrc_msdf_detect, sum_msdf_detect
from src.detectors.calibration import calibrate_threshold
from src.detectors.evcss import EvCssConfig, ev_css_detect
from src.sigmodel.bpsk import soi_feature
from src.utils.workers import TrialPool, chunk_ranges


class TestSystemIntegration(unittest.TestCase):
    """Test the frame -> file -> detector pipeline"""

    def setUp(self):
        """Set up test fixtures"""
        self.scenario = Scenario(n_antennas=2, n_samples=N_SAMPLES, snr_db=0.0)
        self.feature = soi_feature(self.scenario.signal)
        self.config = EvCssConfig(self.feature, TARGET_PFA)

    def test_frame_file_round_trip(self):
        """A detector sees the same statistic on a frame read back from disk"""
        drawn = synthesize_frame(self.scenario, H1, master_seed=1, trial_index=0)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "trial0.iq")
            write_iq_frame(drawn.frame, path)
            loaded = read_iq_frame(path)
        for detector in DetectorId:
            self.assertEqual(detector_statistic(detector, loaded, self.feature),
                             detector_statistic(detector, drawn.frame, self.feature))

    def test_strong_signal_detected(self):
        """EV-CSS and perfect-CSI MRC both fire on a 0 dB frame"""
        drawn = synthesize_frame(self.scenario, H1, master_seed=2, trial_index=3)
        result = ev_css_detect(drawn.frame, self.config)
        self.assertTrue(result.decision)
        self.assertEqual(len(result.singular_values), 2)

        perfect = mrc_msdf_detect(drawn.frame, self.feature, 0.0, drawn.h_soi)
        self.assertTrue(perfect.decision)
        self.assertEqual(perfect.detector_id, "mrc-msdf")

    def test_worker_pool(self):
        """Pool results come back in submission order"""
        with TrialPool(2) as pool:
            magnitudes = pool.map(abs, [-3, -2, -1, 0, 1])
            self.assertEqual(magnitudes, [3, 2, 1, 0, 1])
            self.assertEqual(pool.tasks_done, 5)
        self.assertFalse(pool.running)
        self.assertEqual(chunk_ranges(5, 2), [(0, 2), (2, 4), (4, 5)])
        self.assertEqual(chunk_ranges(0, 2), [])

    def test_full_integration(self):
        """Calibrate SUM-MSDF, then sense a short run of H0 and H1 frames"""
        scenario = Scenario(n_antennas=2, n_samples=1000, snr_db=-2.0)
        threshold = calibrate_threshold("sum-msdf", scenario, TARGET_PFA, 100, seed=5)

        h1_hits = 0
        for trial in range(20):
            frame = synthesize_frame(scenario, H1, master_seed=6, trial_index=trial).frame
            h1_hits += sum_msdf_detect(frame, self.feature, threshold).decision
        h0_hits = 0
        for trial in range(20):
            frame = synthesize_frame(scenario, H0, master_seed=6, trial_index=trial).frame
            h0_hits += ev_css_detect(frame, self.config).decision

        self.assertGreaterEqual(h1_hits, 15)
        self.assertLessEqual(h0_hits, 8)


def run_performance_test():
    """Time EV-CSS against SUM-MSDF per frame"""
    print("\nRunning performance test...")

    scenario = Scenario(n_antennas=4, n_samples=N_SAMPLES, snr_db=-10.0)
    feature = soi_feature(scenario.signal)
    frames = [synthesize_frame(scenario, H1, 1, trial).frame for trial in range(50)]

    for detector in (DetectorId.EV_CSS, DetectorId.SUM_MSDF, DetectorId.BMRC_MSDF):
        start_time = time.time()
        values = [detector_statistic(detector, frame, feature) for frame in frames]
        elapsed = time.time() - start_time
        print(f"{detector}: {1e3 * elapsed / len(frames):.2f} ms/frame "
              f"(median statistic {np.median(values):.4g})")


if __name__ == '__main__':
    print("cyclosense System Tests")
    print("=" * 40)

    # Run unit tests
    print("Running unit tests...")
    unittest.main(argv=[''], exit=False, verbosity=2)

    # Run performance test
    run_performance_test()

    print("\n" + "=" * 40)
    print("All tests completed!")
    print("\nTo run an experiment:")
    print("  python run_console.py pfa-verify --trials 1000")
