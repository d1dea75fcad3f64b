#!/usr/bin/env python3
"""
Tests for helper functions
"""
import sys
import os
import logging
import unittest
from unittest import mock

import numpy as np

# Add project root to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.config.settings import WORKERS_ENV
from src.utils.errors import ConfigurationError, ContractError, CyclosenseError, DimensionError
from src.utils.helpers import (configure_logging, db_to_linear, is_power_of_two, mean_power,
                               next_power_of_two, worker_count)


class TestHelpers(unittest.TestCase):
    """Test small numeric helpers"""

    def test_db(self):
        self.assertAlmostEqual(db_to_linear(10.0), 10.0)
        self.assertAlmostEqual(db_to_linear(-20.0), 0.01)

    def test_powers_of_two(self):
        self.assertTrue(is_power_of_two(1))
        self.assertTrue(is_power_of_two(1024))
        self.assertFalse(is_power_of_two(0))
        self.assertFalse(is_power_of_two(96))
        self.assertEqual(next_power_of_two(100), 128)
        self.assertEqual(next_power_of_two(128), 128)
        self.assertEqual(next_power_of_two(0), 1)

    def test_mean_power(self):
        self.assertEqual(mean_power(np.array([1j, -1.0, 1.0, -1j])), 1.0)
        self.assertEqual(mean_power(np.array([])), 0.0)

    def test_error_hierarchy(self):
        self.assertTrue(issubclass(DimensionError, ContractError))
        self.assertTrue(issubclass(ConfigurationError, ValueError))
        self.assertTrue(issubclass(ContractError, CyclosenseError))


class TestWorkerCount(unittest.TestCase):
    """Test worker resolution order"""

    def test_explicit(self):
        self.assertEqual(worker_count(3), 3)
        with self.assertRaises(ConfigurationError):
            worker_count(0)

    def test_environment(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV: "5"}):
            self.assertEqual(worker_count(), 5)
            self.assertEqual(worker_count(2), 2)
        with mock.patch.dict(os.environ, {WORKERS_ENV: "many"}):
            with self.assertRaises(ConfigurationError):
                worker_count()

    def test_default(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV: ""}):
            self.assertGreaterEqual(worker_count(), 1)


class TestLogging(unittest.TestCase):
    """Test the package log handler"""

    def test_single_handler(self):
        configure_logging(0)
        configure_logging(1)
        logger = logging.getLogger("src")
        self.assertEqual(logger.level, logging.DEBUG)
        self.assertEqual(sum(1 for h in logger.handlers if getattr(h, "_cyclosense", False)), 1)
        configure_logging(-1)
        self.assertEqual(logger.level, logging.WARNING)


if __name__ == '__main__':
    unittest.main()
