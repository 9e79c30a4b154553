"""Integration test of the published numbers at full window sizes.
Windows of radius 1000 to 4000 make these too slow for the unit suite."""

import argparse
import itertools
import math
import sys
import unittest

import numpy as np

from weak_model_sets.correlation.autocorrelation import (
    eta_closed,
    eta_empirical,
)
from weak_model_sets.diffraction.intensity import (
    fourier_sum_oracle,
    intensity,
    support_enumerate,
    support_oracle,
)
from weak_model_sets.diffraction.models import RationalPoint, SpectralWindow
from weak_model_sets.ergodics.identities import (
    cesaro_residual,
    verify_linear_identity,
    verify_partition_total,
    verify_product_identity,
)
from weak_model_sets.ergodics.report import torus_window
from weak_model_sets.ergodics.torus import (
    config_theta,
    random_configuration,
    torus_phi,
    translate_configuration,
    truncation_moduli,
)
from weak_model_sets.numfield.lattice import generate_nf, nf_density
from weak_model_sets.numfield.zeta import dedekind_zeta
from weak_model_sets.patches.entropy import entropy_formula
from weak_model_sets.patches.frequency import (
    frequency_closed,
    measure_B,
    patch_census,
    window_points,
)
from weak_model_sets.patches.models import Patch
from weak_model_sets.pointsets.sets import (
    ball_volume,
    count_members,
    density,
    find_hole,
    verify_hole,
)
from weak_model_sets.pointsets.specs import (
    VISIBLE,
    BFree,
    KFree,
    LatticeWindow,
)

ZETA_TWO = math.pi**2 / 6


def rel_diff(actual, expected):
    """Relative difference."""
    return abs(actual - expected) / abs(expected)


def largest_visible_denominator(threshold: float) -> int:
    """Largest d whose visible intensity prod (p^2 - 1)^-2 is at least
    the threshold, by trial division. Every factor p^2 - 1 is at least p,
    so d never exceeds the budget on prod (p^2 - 1)."""
    budget = math.isqrt(round(1 / threshold))
    largest = 1
    for d in range(2, budget + 1):
        weight, rest, p = 1, d, 2
        while p * p <= rest and weight <= budget:
            if rest % p == 0:
                rest //= p
                if rest % p == 0:
                    weight = budget + 1
                weight *= p * p - 1
            p += 1
        if rest > 1:
            weight *= rest * rest - 1
        if weight <= budget:
            largest = d
    return largest


class IntegrationTestVisiblePoints(unittest.TestCase):
    """Integration test for the visible points of the plane"""

    workers = 1

    def test_density(self):
        """Tests the share of visible points in B_2000"""
        count = count_members(
            VISIBLE, LatticeWindow.ball(2000, 2), workers=self.workers
        )
        observed = count / ball_volume(2000, 2)
        self.assertLess(rel_diff(observed, 1 / ZETA_TWO), 0.005)
        self.assertAlmostEqual(0.6079, observed, delta=0.0031)

    def test_autocorrelation(self):
        """Tests eta at three shifts against the closed form"""
        cases = [((1, 0), 0.3226), ((2, 0), 0.4839), ((3, 3), 0.3687)]
        for shift, value in cases:
            closed = eta_closed(shift)
            self.assertAlmostEqual(value, closed, delta=1e-4)
            sample = eta_empirical(VISIBLE, shift, 2000, workers=self.workers)
            self.assertLess(rel_diff(sample.value, closed), 0.02)

    def test_fourier_sums(self):
        """Tests the Fourier sums at (1/2, 0) approach the peak intensity"""
        point = RationalPoint.from_fractions(["1/2", "0"])
        expected = intensity(VISIBLE, point)
        self.assertAlmostEqual(0.041065, expected, places=6)
        residuals = [
            abs(
                fourier_sum_oracle(VISIBLE, point, r, workers=self.workers)
                - expected
            )
            for r in (500, 1000, 2000, 4000)
        ]
        self.assertLess(residuals[-1], residuals[0])
        self.assertLessEqual(residuals[-1] / expected, 0.15)
        origin = RationalPoint(numerator=(0, 0))
        at_origin = fourier_sum_oracle(
            VISIBLE, origin, 2000, workers=self.workers
        )
        self.assertLess(rel_diff(at_origin, intensity(VISIBLE, origin)), 0.015)

    def test_support(self):
        """Tests the peaks of [0, 2]^2 against an exhaustive scan"""
        window = SpectralWindow(lower=("0", "0"), upper=("2", "2"))
        largest = largest_visible_denominator(1e-6)
        self.assertEqual(34, largest)
        enumerated = support_enumerate(VISIBLE, window, 1e-6)
        self.assertEqual(
            largest, max(a.position.denominator for a in enumerated)
        )
        scanned = support_oracle(VISIBLE, window, 1e-6, largest)
        self.assertEqual(
            [a.position for a in scanned], [a.position for a in enumerated]
        )
        for first, second in zip(scanned, enumerated):
            self.assertLessEqual(
                rel_diff(second.intensity, first.intensity), 1e-12
            )

    def test_hole(self):
        """Tests the hole of radius 1 at its center and three translates"""
        center, period = find_hole(VISIBLE, 1)
        self.assertTrue(
            verify_hole(
                VISIBLE, center, period, 1, [(1, 0), (0, 1), (-3, 2)]
            )
        )


class IntegrationTestPatches(unittest.TestCase):
    """Integration test for patch frequencies and entropies"""

    workers = 1

    @classmethod
    def setUpClass(cls) -> None:
        """Every patch of the radius one window with its frequency."""
        window = window_points(1, 2)
        cls.patches = [
            Patch(radius=1, points=list(subset))
            for size in range(len(window) + 1)
            for subset in itertools.combinations(window, size)
        ]
        cls.closed = {p: frequency_closed(VISIBLE, p) for p in cls.patches}

    def test_frequencies(self):
        """Tests closed form against observed frequencies in B_2000"""
        census, _ = patch_census(VISIBLE, 1, 2000, workers=self.workers)
        volume = ball_volume(2000, 2)
        for patch in self.patches:
            closed = self.closed[patch].value
            observed = census.get(patch, 0) / volume
            self.assertLess(rel_diff(observed, closed), 0.05, patch.key())

    def test_total(self):
        """Tests the frequencies sum to one"""
        total = math.fsum(result.value for result in self.closed.values())
        tail = math.fsum(r.tail_error for r in self.closed.values())
        self.assertLessEqual(abs(total - 1), tail + 1e-9)

    def test_measure_of_supersets(self):
        """Tests measure_B(P) is the frequency sum over patches Q >= P"""
        for patch in self.patches:
            supersets = [
                q
                for q in self.patches
                if set(patch.points) <= set(q.points)
            ]
            total = math.fsum(self.closed[q].value for q in supersets)
            tail = math.fsum(self.closed[q].tail_error for q in supersets)
            measure = measure_B(VISIBLE, patch)
            self.assertLessEqual(
                abs(total - measure.value),
                tail + measure.tail_error + 1e-9,
            )

    def test_entropies(self):
        """Tests entropies equal log(2) times the densities"""
        cases = [
            (VISIBLE, 0.421383),
            (KFree(dimension=1, power=2), 0.421383),
            (BFree(dimension=1, moduli=(2, 3)), 0.231049),
        ]
        for spec, value in cases:
            entropy = entropy_formula(spec)
            self.assertAlmostEqual(value, entropy, delta=1e-6)
            expected = math.log(2) * density(spec, 1e-10).value
            self.assertLessEqual(rel_diff(entropy, expected), 1e-9)


class IntegrationTestErgodics(unittest.TestCase):
    """Integration test for the residue identities and the torus"""

    def test_identities(self):
        """Tests the identities on seeded random pairs of sets"""
        rng = np.random.default_rng(20160101)
        for _ in range(100):
            p_points = rng.integers(-30, 31, size=(5, 2)).tolist()
            q_points = rng.integers(-30, 31, size=(4, 2)).tolist()
            for m in (2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 25, 30):
                self.assertTrue(verify_partition_total(p_points, q_points, m))
                self.assertTrue(verify_linear_identity(p_points, q_points, m))
            for d in (2, 3, 5, 6, 10, 15, 30):
                self.assertTrue(verify_product_identity(p_points, q_points, d))

    def test_cesaro(self):
        """Tests the Cesaro residual of the origin shrinks to 0.01"""
        origin = Patch(radius=0, points=[(0, 0)])
        residuals = [
            cesaro_residual(origin, origin, r) for r in (100, 300, 1000)
        ]
        self.assertEqual(sorted(residuals, reverse=True), residuals)
        self.assertLessEqual(residuals[-1], 0.01)

    def test_torus_round_trip(self):
        """Tests theta inverts phi and both commute with translations"""
        moduli = truncation_moduli(VISIBLE, 7)
        self.assertEqual([2, 3, 5, 7], list(moduli))
        window = torus_window(moduli, 2, 10**8)
        rng = np.random.default_rng(7)
        for _ in range(200):
            configuration = random_configuration(moduli, 2, rng)
            points = torus_phi(configuration, window)
            self.assertEqual(
                configuration, config_theta(points, window, moduli)
            )
        for _ in range(20):
            configuration = random_configuration(moduli, 2, rng)
            t = tuple(int(c) for c in rng.integers(-500, 501, size=2))
            moved = LatticeWindow.box(t, tuple(c + 209 for c in t))
            points = torus_phi(configuration, window) + np.asarray(t)
            self.assertEqual(
                translate_configuration(configuration, t),
                config_theta(points, moved, moduli),
            )


class IntegrationTestNumberField(unittest.TestCase):
    """Integration test for the k-free integers of Z[sqrt 2]"""

    def test_zeta(self):
        """Tests zeta_K(2) = pi^4 / (48 sqrt 2)"""
        expected = math.pi**4 / (48 * math.sqrt(2))
        actual = dedekind_zeta(2.0).value
        self.assertLessEqual(rel_diff(actual, expected), 1e-8)

    def test_embedded_density(self):
        """Tests the share of 2-free integers in the disk of radius 400"""
        point_set = generate_nf(2, 400)
        observed = len(point_set) / ball_volume(400, 2)
        self.assertLess(rel_diff(observed, nf_density(2).value), 0.02)
        self.assertAlmostEqual(24 / math.pi**4, nf_density(2).value, 9)


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--workers", type=int, default=1)
    args, remaining = parser.parse_known_args()
    IntegrationTestVisiblePoints.workers = args.workers
    IntegrationTestPatches.workers = args.workers
    unittest.main(argv=[sys.argv[0]] + remaining)
