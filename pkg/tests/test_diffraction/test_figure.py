"""Tests SVG and CSV renderings and the diffract job"""

import io
import json
import os
import tempfile
import unittest
from collections import Counter
from pathlib import Path

import pandas as pd

from weak_model_sets.diffraction.figure import (
    disk_radius,
    emit_figure,
    render_csv,
    render_svg,
)
from weak_model_sets.diffraction.intensity import support_enumerate
from weak_model_sets.diffraction.jobs import DiffractJob
from weak_model_sets.diffraction.models import (
    DiffractionAtom,
    DiffractJobSettings,
    FigureJobSettings,
    RationalPoint,
    SpectralWindow,
)
from weak_model_sets.pointsets.specs import VISIBLE

DIFFRACTION_DIR = (
    Path(os.path.dirname(os.path.realpath(__file__))).parent
    / "resources"
    / "diffraction"
)


def make_atom(coordinates, value):
    """Atom at exact coordinates."""
    return DiffractionAtom(
        position=RationalPoint.from_fractions(coordinates), intensity=value
    )


class TestRenderSvg(unittest.TestCase):
    """Tests render_svg"""

    def setUp(self):
        """Two atoms on the first axis"""
        self.atoms = [make_atom(["0", "0"], 1.0), make_atom(["1", "0"], 0.25)]

    def test_layout(self):
        """Tests canvas size, disk positions and radii"""
        svg = render_svg(self.atoms, provenance="spec=visible")
        lines = svg.splitlines()
        self.assertEqual('<?xml version="1.0" encoding="UTF-8"?>', lines[0])
        self.assertEqual(
            "<!-- style=area_proportional spec=visible -->", lines[1]
        )
        self.assertIn('width="800.00" height="266.67"', lines[2])
        self.assertEqual(
            '<circle cx="133.333" cy="133.333" r="64.000" fill="black"/>',
            lines[4],
        )
        self.assertEqual(
            '<circle cx="666.667" cy="133.333" r="32.000" fill="black"/>',
            lines[5],
        )
        self.assertEqual("</svg>", lines[-1])

    def test_stable(self):
        """Tests identical input renders identical bytes"""
        self.assertEqual(render_svg(self.atoms), render_svg(self.atoms))

    def test_comment_escaped(self):
        """Tests double hyphens cannot close the comment early"""
        svg = render_svg(self.atoms, provenance="a--b")
        self.assertIn("a- -b", svg)

    def test_empty_and_planar(self):
        """Tests an empty figure and refusal of non-planar atoms"""
        self.assertIn("</svg>", render_svg([]))
        with self.assertRaises(ValueError):
            render_svg([make_atom(["1/2"], 0.1)])

    def test_styles(self):
        """Tests the two disk radius styles"""
        self.assertAlmostEqual(0.05, disk_radius(1.0, "quartic_rescale", 9))
        self.assertAlmostEqual(
            0.005, disk_radius(1e-4, "quartic_rescale", 9)
        )
        self.assertAlmostEqual(
            0.3, disk_radius(0.09, "area_proportional", 1.0)
        )


class TestGoldenFigures(unittest.TestCase):
    """Tests the visible point figures against stored golden files"""

    def test_unit_square_svg(self):
        """Tests the SVG of [0, 1]^2 above 0.1 byte for byte"""
        window = SpectralWindow(lower=("0", "0"), upper=("1", "1"))
        atoms = support_enumerate(VISIBLE, window, 0.1)
        self.assertEqual(9, len(atoms))
        svg = render_svg(atoms, provenance="spec=visible threshold=0.1")
        expected = (DIFFRACTION_DIR / "visible_unit_square.svg").read_bytes()
        self.assertEqual(expected, svg.encode("utf-8"))

    def test_support_census(self):
        """Tests the atoms of [0, 2]^2 above 1e-6 per denominator"""
        with open(DIFFRACTION_DIR / "visible_support_census.json") as f:
            census = json.load(f)
        window = SpectralWindow(
            lower=census["lower"], upper=census["upper"]
        )
        atoms = support_enumerate(VISIBLE, window, census["threshold"])
        counts = Counter(str(a.position.denominator) for a in atoms)
        self.assertEqual(census["atoms"], len(atoms))
        self.assertEqual(census["counts_by_denominator"], dict(counts))
        self.assertEqual(
            census["largest_denominator"],
            max(a.position.denominator for a in atoms),
        )


class TestRenderCsv(unittest.TestCase):
    """Tests render_csv and emit_figure"""

    def test_table(self):
        """Tests the columns and exact positions"""
        atoms = [make_atom(["1/2", "1/3"], 0.5)]
        text = render_csv(atoms, provenance="config: {}")
        self.assertTrue(text.startswith("# config: {}\n"))
        frame = pd.read_csv(io.StringIO(text), comment="#", dtype=str)
        self.assertEqual(
            ["k0", "k1", "denominator", "intensity"], list(frame.columns)
        )
        self.assertEqual(["1/2", "1/3", "6"], frame.iloc[0].tolist()[:3])
        self.assertEqual(0.5, float(frame["intensity"][0]))

    def test_empty(self):
        """Tests no atoms leave only the provenance line"""
        self.assertEqual("# p\n", render_csv([], provenance="p"))

    def test_emit(self):
        """Tests both formats are written and bad formats refused"""
        atoms = [make_atom(["0", "0"], 1.0)]
        with tempfile.TemporaryDirectory() as tmp:
            svg = emit_figure(atoms, "area_proportional", Path(tmp) / "f.svg")
            self.assertTrue(svg.read_text().startswith("<?xml"))
            csv = emit_figure(
                atoms, "area_proportional", Path(tmp) / "f.csv", "csv"
            )
            self.assertTrue(csv.read_text().startswith("k0,k1"))
            with self.assertRaises(ValueError):
                emit_figure(atoms, "quartic_rescale", Path(tmp) / "f", "png")
            with self.assertRaises(OSError):
                emit_figure(
                    atoms, "quartic_rescale", Path(tmp) / "no" / "f.svg"
                )


class TestDiffractJob(unittest.TestCase):
    """Tests DiffractJob"""

    def test_csv(self):
        """Tests the peaks of the unit square above 1%"""
        settings = DiffractJobSettings(
            lower=("0", "0"), upper=("1", "1"), threshold=0.01
        )
        response = DiffractJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        self.assertTrue(response.data.startswith("# spec=visible config: "))
        frame = pd.read_csv(io.StringIO(response.data), comment="#")
        self.assertEqual(4 + 5 + 12, len(frame))
        self.assertEqual([1, 2, 3], sorted(set(frame["denominator"])))

    def test_svg(self):
        """Tests the figure settings draw an SVG"""
        settings = FigureJobSettings(
            lower=("0", "0"), upper=("1", "1"), threshold=0.01
        )
        response = DiffractJob(job_settings=settings).run()
        self.assertEqual(200, response.status_code)
        self.assertEqual(21, response.data.count("<circle"))

    def test_bad_threshold(self):
        """Tests the threshold must lie in (0, 1]"""
        with self.assertRaises(ValueError):
            DiffractJobSettings(threshold=0)


if __name__ == "__main__":
    unittest.main()
