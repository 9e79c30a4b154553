"""Tests the gen, member, admissible and hole jobs"""

import tempfile
import unittest
from pathlib import Path

from pydantic import ValidationError

from weak_model_sets.pointsets.jobs import (
    AdmissibleJob,
    GenerateJob,
    HoleJob,
    MemberJob,
)
from weak_model_sets.pointsets.models import (
    AdmissibleJobSettings,
    GenerateJobSettings,
    HoleJobSettings,
    MemberJobSettings,
)
from weak_model_sets.pointsets.serialization import read_point_set


class TestGenerateJob(unittest.TestCase):
    """Tests GenerateJob"""

    def test_csv_data(self):
        """Tests the CSV is returned when no output path is set"""
        settings = GenerateJobSettings(
            spec="squarefree", lower=(1,), upper=(10,)
        )
        response = GenerateJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        rows = [
            line
            for line in response.data.splitlines()
            if not line.startswith("#")
        ]
        self.assertEqual(["x0", "1", "2", "3", "5", "6", "7", "10"], rows)
        self.assertIn('"job_settings_name":"Generate"', response.data)

    def test_rle_file(self):
        """Tests the run-length format is written to the output path"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "points.rle"
            settings = GenerateJobSettings(
                radius=4, output_format="rle", output_path=path
            )
            response = GenerateJob(job_settings=settings).run()
            self.assertEqual(200, response.status_code)
            self.assertIsNone(response.data)
            self.assertIn(str(path), response.message)
            self.assertIn((1, 3), read_point_set(path))

    def test_rle_needs_path(self):
        """Tests binary output without a path is a 400"""
        settings = GenerateJobSettings(radius=4, output_format="rle")
        response = GenerateJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)

    def test_window_cap(self):
        """Tests a window above the cap is a 400 naming the cap"""
        settings = GenerateJobSettings(radius=100, window_cap=10)
        response = GenerateJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)
        self.assertIn("the cap is 10", response.message)

    def test_write_error(self):
        """Tests an unwritable output path is a 500"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "missing" / "points.csv"
            settings = GenerateJobSettings(radius=2, output_path=path)
            response = GenerateJob(job_settings=settings).run()
        self.assertEqual(500, response.status_code)
        self.assertIn("Error writing to", response.message)

    def test_window_required(self):
        """Tests a radius or a box must be given"""
        with self.assertRaises(ValidationError):
            GenerateJobSettings(lower=(0, 0))


class TestMemberJob(unittest.TestCase):
    """Tests MemberJob"""

    def test_answers(self):
        """Tests true and false answers"""
        for point, answer in [((3, 4), "true\n"), ((2, 4), "false\n")]:
            settings = MemberJobSettings(point=point)
            response = MemberJob(job_settings=settings).run()
            self.assertEqual(200, response.status_code)
            self.assertEqual(answer, response.data)

    def test_dimension(self):
        """Tests a point of the wrong dimension is a 400"""
        settings = MemberJobSettings(point=(1, 2, 3))
        response = MemberJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)


class TestAdmissibleJob(unittest.TestCase):
    """Tests AdmissibleJob"""

    def test_witness(self):
        """Tests the witness modulus is reported"""
        settings = AdmissibleJobSettings(
            points=[(0, 0), (0, 1), (1, 0), (1, 1)]
        )
        response = AdmissibleJob(job_settings=settings).run()
        self.assertEqual("false witness 2\n", response.data)

    def test_input_file(self):
        """Tests points read from a point set file"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "points.csv"
            GenerateJob(
                job_settings=GenerateJobSettings(radius=3, output_path=path)
            ).run()
            settings = AdmissibleJobSettings(input_path=path)
            response = AdmissibleJob(job_settings=settings).run()
        self.assertEqual("true\n", response.data)


class TestHoleJob(unittest.TestCase):
    """Tests HoleJob"""

    def test_squarefree(self):
        """Tests the square-free hole of inradius 1.5"""
        settings = HoleJobSettings(spec="squarefree", radius=1.5)
        response = HoleJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        lines = response.data.splitlines()
        self.assertTrue(lines[0].startswith("# config: "))
        self.assertEqual(
            ["center: 549", "period: 900", "verified: true"], lines[1:]
        )

    def test_bfree_too_small(self):
        """Tests a B-free set with too few moduli is a 400"""
        settings = HoleJobSettings(spec="bfree:1:4,9", radius=1)
        response = HoleJob(job_settings=settings).run()
        self.assertEqual(400, response.status_code)
        self.assertIn("B too small", response.message)


if __name__ == "__main__":
    unittest.main()
