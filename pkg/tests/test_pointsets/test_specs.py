"""Tests point set specifications and windows"""

import unittest

import numpy as np
from pydantic import ValidationError

from weak_model_sets.pointsets.specs import (
    VISIBLE,
    BFree,
    KFree,
    LatticeWindow,
    PointSet,
    parse_spec,
)


class TestParseSpec(unittest.TestCase):
    """Tests the compact text form of point sets"""

    def test_named_forms(self):
        """Tests visible and squarefree shortcuts"""
        self.assertEqual(VISIBLE, parse_spec("visible"))
        self.assertEqual(KFree(dimension=1, power=2), parse_spec("squarefree"))
        self.assertEqual(KFree(dimension=2, power=1), parse_spec(" Visible "))

    def test_kfree_and_bfree(self):
        """Tests the parameterised forms and their labels"""
        kfree = parse_spec("kfree:3,2")
        self.assertEqual(KFree(dimension=3, power=2), kfree)
        self.assertEqual("kfree:3,2", kfree.label)
        bfree = parse_spec("bfree:2:4,9,25")
        self.assertEqual((4, 9, 25), bfree.moduli)
        self.assertEqual("bfree:2:4,9,25", bfree.label)
        self.assertEqual(bfree, parse_spec(bfree.label))

    def test_rejects(self):
        """Tests malformed, trivial and non-coprime point sets"""
        for text in [
            "kfree:1,1",
            "kfree:2",
            "bfree:1:4,6",
            "bfree:1:9,4",
            "bfree:1:1",
            "lattice",
        ]:
            with self.assertRaises(ValueError, msg=text):
                parse_spec(text)

    def test_excluded_moduli(self):
        """Tests the moduli below a limit"""
        self.assertEqual([2, 3, 5, 7], VISIBLE.excluded_moduli(10))
        squarefree = KFree(dimension=1, power=2)
        self.assertEqual([4, 9], squarefree.excluded_moduli(10))
        self.assertEqual([], VISIBLE.excluded_moduli(1))
        bfree = BFree(dimension=1, moduli=(2, 3, 35))
        self.assertEqual([2, 3], bfree.excluded_moduli(10))
        self.assertEqual(1, bfree.sieve_exponent)
        self.assertEqual(4, KFree(dimension=2, power=2).sieve_exponent)


class TestLatticeWindow(unittest.TestCase):
    """Tests ball and box windows"""

    def test_ball(self):
        """Tests the bounding box of an off-centre ball"""
        window = LatticeWindow.ball(2.5, 2, (1, 1))
        self.assertTrue(window.is_ball)
        self.assertEqual(((-1, -1), (3, 3)), window.bounding_box())
        self.assertEqual(25, window.box_size())
        self.assertTrue(window.contains_ball((1, 1), 2))
        self.assertFalse(window.contains_ball((2, 1), 2))

    def test_box(self):
        """Tests box sizes and emptiness"""
        window = LatticeWindow.box((0, 0), (3, 4))
        self.assertEqual(20, window.box_size())
        self.assertTrue(window.contains_ball((1, 2), 1))
        self.assertFalse(window.contains_ball((0, 2), 1))
        empty = LatticeWindow.box((2,), (1,))
        self.assertTrue(empty.is_empty)
        self.assertEqual(0, empty.box_size())

    def test_shape_validation(self):
        """Tests a window must be exactly one of ball and box"""
        with self.assertRaises(ValidationError):
            LatticeWindow(dimension=2)
        with self.assertRaises(ValidationError):
            LatticeWindow(dimension=2, radius=1.0, lower=(0, 0), upper=(1, 1))
        with self.assertRaises(ValidationError):
            LatticeWindow(dimension=2, lower=(0, 0))
        with self.assertRaises(ValidationError):
            LatticeWindow.ball(1.0, 2, (0, 0, 0))

    def test_json(self):
        """Tests windows survive their JSON form"""
        window = LatticeWindow.ball(3.0, 2)
        self.assertEqual(
            window, LatticeWindow.model_validate_json(window.model_dump_json())
        )


class TestPointSet(unittest.TestCase):
    """Tests the PointSet container"""

    def test_membership(self):
        """Tests lookup by tuple, list and array"""
        points = np.array([[0, 1], [1, 0]], dtype=np.int64)
        point_set = PointSet(
            spec=VISIBLE, window=LatticeWindow.ball(1, 2), points=points
        )
        self.assertEqual(2, len(point_set))
        self.assertIn((0, 1), point_set)
        self.assertIn([1, 0], point_set)
        self.assertIn(np.array([1, 0]), point_set)
        self.assertNotIn((1, 1), point_set)
        self.assertEqual([(0, 1), (1, 0)], point_set.as_tuples())


if __name__ == "__main__":
    unittest.main()
