"""Tests the Chinese remainder solver"""

import math
import unittest
from itertools import product

from weak_model_sets.arith.crt import crt_solve
from weak_model_sets.arith.models import ResidueVector
from weak_model_sets.exceptions import NonCoprimeModuliError


class TestCrt(unittest.TestCase):
    """Tests crt_solve"""

    def test_two_moduli(self):
        """Tests (1,0) mod 2 and (2,2) mod 3 give (5,2) mod 6"""
        congruences = [
            ResidueVector(coordinates=(1, 0), modulus=2),
            ResidueVector(coordinates=(2, 2), modulus=3),
        ]
        self.assertEqual(((5, 2), 6), crt_solve(congruences))

    def test_reduces_targets(self):
        """Tests targets are reduced before solving"""
        congruences = [
            ResidueVector(coordinates=(-1,), modulus=4),
            ResidueVector(coordinates=(7,), modulus=9),
            ResidueVector(coordinates=(0,), modulus=25),
        ]
        solution, modulus = crt_solve(congruences)
        self.assertEqual(900, modulus)
        self.assertEqual(3, solution[0] % 4)
        self.assertEqual(7, solution[0] % 9)
        self.assertEqual(0, solution[0] % 25)

    def test_modulus_one(self):
        """Tests a trivial congruence leaves the solution unchanged"""
        congruences = [
            ResidueVector(coordinates=(0, 0), modulus=1),
            ResidueVector(coordinates=(3, 4), modulus=5),
        ]
        self.assertEqual(((3, 4), 5), crt_solve(congruences))

    def test_non_coprime(self):
        """Tests non-coprime moduli name the offending pair"""
        congruences = [
            ResidueVector(coordinates=(1,), modulus=4),
            ResidueVector(coordinates=(1,), modulus=6),
        ]
        with self.assertRaises(NonCoprimeModuliError) as e:
            crt_solve(congruences)
        self.assertEqual((4, 6), e.exception.pair)

    def test_exhaustive(self):
        """Tests every residue system for moduli with product up to 10^4"""
        for moduli in [(16, 625), (7, 11, 13), (8, 9, 5, 7), (4, 9, 25)]:
            modulus = math.prod(moduli)
            for t in range(modulus):
                congruences = [
                    ResidueVector(coordinates=(t % m,), modulus=m)
                    for m in moduli
                ]
                self.assertEqual(((t,), modulus), crt_solve(congruences))

    def test_exhaustive_planar(self):
        """Tests every planar residue system mod 4 and 9"""
        for t in product(range(36), repeat=2):
            congruences = [
                ResidueVector(coordinates=(t[0] % m, t[1] % m), modulus=m)
                for m in (4, 9)
            ]
            self.assertEqual((t, 36), crt_solve(congruences))

    def test_bad_input(self):
        """Tests empty systems and mixed dimensions are rejected"""
        with self.assertRaises(ValueError):
            crt_solve([])
        with self.assertRaises(ValueError):
            crt_solve(
                [
                    ResidueVector(coordinates=(1,), modulus=2),
                    ResidueVector(coordinates=(1, 1), modulus=3),
                ]
            )


if __name__ == "__main__":
    unittest.main()
