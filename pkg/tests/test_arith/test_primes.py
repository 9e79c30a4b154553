"""Tests sieves, factorisation and the Moebius function"""

import math
import unittest

from weak_model_sets.arith import primes


class TestPrimes(unittest.TestCase):
    """Tests methods in the primes module"""

    def test_primes_up_to(self):
        """Tests the primes below 30 and the empty edge cases"""
        self.assertEqual(
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29], primes.primes_up_to(30)
        )
        self.assertEqual([], primes.primes_up_to(1))
        self.assertEqual([2], primes.primes_up_to(2))

    def test_primes_up_to_negative(self):
        """Tests a negative limit is rejected"""
        with self.assertRaises(ValueError):
            primes.primes_up_to(-1)

    def test_prime_array_counts(self):
        """Tests prime counts across a segment boundary"""
        self.assertEqual(168, len(primes.prime_array(1000)))
        self.assertEqual(78498, len(primes.prime_array(10**6)))
        segmented = primes.prime_array(1_100_000)
        self.assertEqual(
            primes._simple_sieve(1_100_000).tolist(), segmented.tolist()
        )

    def test_prime_array_read_only(self):
        """Tests the cached sieve cannot be modified"""
        array = primes.prime_array(100)
        with self.assertRaises(ValueError):
            array[0] = 4

    def test_first_primes(self):
        """Tests the first primes in order"""
        self.assertEqual([2, 3, 5, 7, 11], primes.first_primes(5))

    def test_integer_root(self):
        """Tests exact integer roots around perfect powers"""
        self.assertEqual(3, primes.integer_root(27, 3))
        self.assertEqual(2, primes.integer_root(26, 3))
        self.assertEqual(1000, primes.integer_root(10**6, 2))
        self.assertEqual(999, primes.integer_root(10**6 - 1, 2))
        self.assertEqual(0, primes.integer_root(0, 2))
        self.assertEqual(7, primes.integer_root(7, 1))
        with self.assertRaises(ValueError):
            primes.integer_root(-1, 2)

    def test_factorize(self):
        """Tests factorisations including a large prime cofactor"""
        self.assertEqual([], primes.factorize(1))
        self.assertEqual([(2, 2), (3, 1), (5, 1)], primes.factorize(60))
        self.assertEqual([(2, 1), (1000003, 1)], primes.factorize(2000006))
        with self.assertRaises(ValueError):
            primes.factorize(0)

    def test_moebius(self):
        """Tests the Moebius function on small arguments"""
        values = [primes.moebius(n) for n in range(1, 11)]
        self.assertEqual([1, -1, -1, 0, -1, 1, -1, 0, 0, 1], values)
        with self.assertRaises(ValueError):
            primes.moebius(0)

    def test_gcd_vector(self):
        """Tests the gcd of coordinates"""
        self.assertEqual(3, primes.gcd_vector((3, -6)))
        self.assertEqual(1, primes.gcd_vector((3, 4)))
        self.assertEqual(0, primes.gcd_vector((0, 0)))
        self.assertEqual(5, primes.gcd_vector((0, 5)))

    def test_is_k_free_integer(self):
        """Tests the k-free test and the radical"""
        self.assertTrue(primes.is_k_free_integer(30, 2))
        self.assertFalse(primes.is_k_free_integer(12, 2))
        self.assertTrue(primes.is_k_free_integer(12, 3))
        self.assertTrue(primes.is_k_free_integer(1, 1))
        self.assertEqual(30, primes.radical(360))
        self.assertEqual(1, primes.radical(1))

    def test_moebius_multiplicative(self):
        """Tests mu(ab) = mu(a) mu(b) for coprime a, b with ab <= 1000"""
        for a in range(1, 1001):
            for b in range(1, 1000 // a + 1):
                if math.gcd(a, b) == 1:
                    self.assertEqual(
                        primes.moebius(a) * primes.moebius(b),
                        primes.moebius(a * b),
                    )

    def test_moebius_divisor_sums(self):
        """Tests the divisor sums of mu vanish for 1 < n <= 1000"""
        for n in range(1, 1001):
            total = sum(
                primes.moebius(d) for d in range(1, n + 1) if n % d == 0
            )
            self.assertEqual(1 if n == 1 else 0, total)

    def test_k_free_against_factorisation(self):
        """Tests the early exit test against full factorisations"""
        for n in range(1, 2001):
            exponents = [e for _, e in primes.factorize(n)]
            for k in (1, 2, 3):
                self.assertEqual(
                    all(e < k for e in exponents),
                    primes.is_k_free_integer(n, k),
                )
        with self.assertRaises(ValueError):
            primes.is_k_free_integer(0, 2)

    def test_k_free_large(self):
        """Tests large numbers with a small square factor are settled"""
        self.assertFalse(primes.is_k_free_integer(9 * (10**40 + 1), 2))
        self.assertFalse(primes.is_k_free_integer(6 * 10**50, 1))
        self.assertTrue(primes.is_k_free_integer(2 * 3 * 5 * 7 * 11, 2))

    def test_iter_primes(self):
        """Tests the lazy prime stream crosses its first block"""
        stream = primes.iter_primes()
        first = [next(stream) for _ in range(200)]
        self.assertEqual(primes.first_primes(200), first)
        self.assertEqual(1223, first[-1])


if __name__ == "__main__":
    unittest.main()
