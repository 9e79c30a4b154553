"""Tests the nf-gen, nf-zeta and nf-diffract jobs"""

import io
import json
import math
import tempfile
import unittest
from pathlib import Path

import pandas as pd

from weak_model_sets.numfield.jobs import (
    NfDiffractJob,
    NfGenerateJob,
    NfZetaJob,
)
from weak_model_sets.numfield.models import (
    NfDiffractJobSettings,
    NfGenerateJobSettings,
    NfZetaJobSettings,
)
from weak_model_sets.numfield.spectrum import nf_support_enumerate


def read_table(data):
    """Table of a response, comment lines skipped."""
    return pd.read_csv(io.StringIO(data), comment="#")


class TestNfGenerateJob(unittest.TestCase):
    """Tests NfGenerateJob"""

    def test_small_disk(self):
        """Tests the four units and roots of the disk of radius 2"""
        settings = NfGenerateJobSettings(radius=2.0)
        response = NfGenerateJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        frame = read_table(response.data)
        self.assertEqual(
            ["a", "b", "x", "x_conjugate"], list(frame.columns)
        )
        self.assertEqual(
            {(1, 0), (-1, 0), (0, 1), (0, -1)},
            set(zip(frame["a"], frame["b"])),
        )
        self.assertIn("expected 0.246384", response.data)

    def test_cap(self):
        """Tests the window cap becomes a 400"""
        settings = NfGenerateJobSettings(radius=50.0, window_cap=100)
        response = NfGenerateJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)


class TestNfZetaJob(unittest.TestCase):
    """Tests NfZetaJob"""

    def test_table_and_cache(self):
        """Tests the table and that a second run reads the cache"""
        with tempfile.TemporaryDirectory() as tmp:
            settings = NfZetaJobSettings(points=[2.0, 20.0], cache_dir=tmp)
            first = NfZetaJob(job_settings=settings).run()
            self.assertEqual(200, first.status_code)
            cache_file = Path(tmp) / "euler_constants.json"
            self.assertTrue(cache_file.is_file())
            with open(cache_file, "r") as f:
                self.assertEqual(2, len(json.load(f)))
            second = NfZetaJob(job_settings=settings).run()
        self.assertEqual(first.data, second.data)
        frame = read_table(first.data)
        self.assertEqual(
            ["s", "zeta", "certified_error", "method"], list(frame.columns)
        )
        self.assertAlmostEqual(
            math.pi**4 / (48 * math.sqrt(2)), frame["zeta"][0], places=8
        )
        self.assertAlmostEqual(1.0000009537, frame["zeta"][1], places=10)

    def test_without_cache(self):
        """Tests the job runs without a cache directory"""
        settings = NfZetaJobSettings(points=[3.0])
        response = NfZetaJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        self.assertEqual(1, len(read_table(response.data)))

    def test_bad_argument(self):
        """Tests s <= 1 is a 400"""
        settings = NfZetaJobSettings(points=[1.0])
        response = NfZetaJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)


class TestNfDiffractJob(unittest.TestCase):
    """Tests NfDiffractJob"""

    def test_csv(self):
        """Tests one row per peak"""
        settings = NfDiffractJobSettings(threshold=0.1)
        response = NfDiffractJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        self.assertTrue(response.data.startswith("# k=2 config: "))
        atoms = nf_support_enumerate(2, (-1, -1), (1, 1), 0.1)
        frame = read_table(response.data)
        self.assertEqual(len(atoms), len(frame))
        self.assertEqual({1, 2, 4}, set(frame["denominator_norm"]))

    def test_svg_file(self):
        """Tests the figure is written with one disk per peak"""
        atoms = nf_support_enumerate(2, (-1, -1), (1, 1), 0.1)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "peaks.svg"
            settings = NfDiffractJobSettings(
                threshold=0.1, output_format="svg", output_path=path
            )
            response = NfDiffractJob(job_settings=settings).run()
            self.assertEqual(200, response.status_code)
            with open(path, "r") as f:
                svg = f.read()
        self.assertTrue(svg.startswith("<?xml"))
        self.assertEqual(len(atoms), svg.count("<circle"))


if __name__ == "__main__":
    unittest.main()
