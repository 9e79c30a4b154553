"""Tests the verification report and the ergocheck job"""

import io
import unittest

import numpy as np
import pandas as pd

from weak_model_sets.ergodics.jobs import ErgoCheckJob
from weak_model_sets.ergodics.models import ErgoCheckJobSettings
from weak_model_sets.ergodics.report import (
    cesaro_rows,
    identity_rows,
    report_frame,
    torus_rows,
    torus_window,
    verification_report,
)
from weak_model_sets.exceptions import WindowCapError
from weak_model_sets.pointsets.specs import VISIBLE, KFree

SMALL = {
    "trials": 10,
    "cesaro_radii": [20],
    "torus_prime_bound": 3,
    "torus_trials": 5,
    "translations": 3,
}


class TestRows(unittest.TestCase):
    """Tests the report sections"""

    def test_identity_rows(self):
        """Tests the exact identities never fail"""
        rows = identity_rows(np.random.default_rng(1), 30, (2, 3, 4, 5))
        self.assertEqual(
            ["partition_total", "linear", "product"],
            [row.identity for row in rows],
        )
        self.assertTrue(all(row.passed for row in rows))
        self.assertEqual([0.0, 0.0, 0.0], [row.residual for row in rows])

    def test_cesaro_rows(self):
        """Tests one row per radius and the limit row"""
        rows = cesaro_rows(VISIBLE, [15, 40], 1.0, 1e-10, 10**8)
        self.assertEqual(
            ["cesaro", "cesaro", "cesaro_limit"],
            [row.identity for row in rows],
        )
        self.assertEqual("R=40", rows[1].parameters)
        self.assertEqual(rows[1].residual, rows[2].residual)

    def test_cesaro_bound(self):
        """Tests a residual above the bound fails the limit row"""
        rows = cesaro_rows(VISIBLE, [15], 1e-15, 1e-10, 10**8)
        self.assertFalse(rows[-1].passed)

    def test_torus_rows(self):
        """Tests round trips and translations on a square-free truncation"""
        rows = torus_rows(
            KFree(dimension=1, power=2),
            np.random.default_rng(3),
            prime_bound=7,
            trials=25,
            translations=10,
            cap=10**6,
        )
        self.assertEqual(
            ["torus_round_trip", "torus_equivariance"],
            [row.identity for row in rows],
        )
        self.assertTrue(all(row.passed for row in rows))
        self.assertTrue(rows[0].parameters.startswith("moduli=4,9,25,49"))

    def test_torus_window(self):
        """Tests the box side is the product of the moduli"""
        window = torus_window((2, 3, 5), 2, 10**4)
        self.assertEqual(((0, 0), (29, 29)), window.bounding_box())
        with self.assertRaises(WindowCapError):
            torus_window((2, 3, 5, 7), 2, 10**4)


class TestReport(unittest.TestCase):
    """Tests the full report"""

    def test_seeded(self):
        """Tests a seed reproduces the report"""
        first = verification_report(
            VISIBLE,
            seed=5,
            trials=10,
            cesaro_radii=(20,),
            torus_primes=3,
            torus_trials=5,
            translations=3,
        )
        second = verification_report(
            VISIBLE,
            seed=5,
            trials=10,
            cesaro_radii=(20,),
            torus_primes=3,
            torus_trials=5,
            translations=3,
        )
        self.assertEqual(first, second)
        self.assertEqual(7, len(first))
        frame = report_frame(first)
        self.assertEqual(
            ["identity", "parameters", "passed", "residual"],
            list(frame.columns),
        )


class TestErgoCheckJob(unittest.TestCase):
    """Tests ErgoCheckJob"""

    def test_passes(self):
        """Tests a small report passes with a loose bound"""
        settings = ErgoCheckJobSettings(cesaro_bound=1.0, **SMALL)
        response = ErgoCheckJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        frame = pd.read_csv(io.StringIO(response.data), comment="#")
        self.assertTrue(frame["passed"].all())

    def test_fails(self):
        """Tests a failed row gives 406 and names the check"""
        settings = ErgoCheckJobSettings(cesaro_bound=1e-15, **SMALL)
        response = ErgoCheckJob(job_settings=settings).run()
        self.assertEqual(406, response.status_code)
        self.assertIn("cesaro_limit bound=1e-15", response.message)
        self.assertIsNotNone(response.data)


if __name__ == "__main__":
    unittest.main()
