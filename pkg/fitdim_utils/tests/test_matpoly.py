"""Tests for the matpoly module"""
import unittest

import numpy as np
import sympy

from tests import utils as test_utils

from fitdim_utils import generate, matpoly
from fitdim_utils.exceptions import StructuralError
from fitdim_utils.matpoly import MapOfFree

FITTING_MAPS = 15


class MapOfFreeTest(unittest.TestCase):
    """Tests for the MapOfFree class"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xy")

    def test_shape_is_checked(self):
        with self.assertRaises(StructuralError):
            MapOfFree(self.ring, 2, 1, [[self.ring.one()]])

    def test_zero_row_and_zero_column_maps(self):
        """Test if n x 0 and 0 x n maps are not empty but 0 x 0 is"""
        self.assertFalse(MapOfFree.zero(self.ring, 2, 0).is_empty())
        self.assertFalse(MapOfFree.zero(self.ring, 0, 2).is_empty())
        self.assertTrue(MapOfFree.zero(self.ring, 0, 0).is_empty())
        self.assertEqual(test_utils.make_map(self.ring, [], 3).shape, (0, 3))

    def test_compose(self):
        left = test_utils.make_map(self.ring, [["x", "y"]])
        right = test_utils.make_map(self.ring, [["-y"], ["x"]])
        self.assertTrue((left @ right).is_zero())
        with self.assertRaises(StructuralError):
            _ = left @ left

    def test_transpose_and_permute(self):
        matrix = test_utils.make_map(self.ring, [["x", "1"], ["y", "0"]])
        self.assertEqual(matrix.transpose().entry(0, 1), self.ring.parse("y"))
        self.assertEqual(matrix.permute([1, 0], [0, 1]).entry(0, 0), self.ring.parse("y"))
        self.assertFalse(matrix.is_minimal())
        self.assertEqual(matrix.max_degree(), 1)


class MinorTest(unittest.TestCase):
    """Tests for determinants, minors and ideals of minors"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xyz")

    def test_determinant_of_2x2(self):
        matrix = test_utils.make_map(self.ring, [["x", "y"], ["z", "x"]])
        expected = self.ring.parse("x^2 - y*z")
        self.assertEqual(matpoly.determinant(matrix), expected)
        self.assertEqual(matpoly.bareiss_determinant(matrix), expected)

    def test_determinant_of_empty_matrix_is_one(self):
        self.assertEqual(matpoly.determinant(MapOfFree.zero(self.ring, 0, 0)), 1)

    def test_determinant_of_non_square_raises(self):
        with self.assertRaises(StructuralError):
            matpoly.determinant(MapOfFree.zero(self.ring, 1, 2))

    def test_determinants_agree_with_sympy(self):
        """Test if 100 random 4x4 determinants agree with sympy and with Bareiss elimination"""
        rng = np.random.default_rng(3)
        symbols = test_utils.sympy_symbols(self.ring)
        for _ in range(100):
            rows = [[self._entry(rng) for _ in range(4)] for _ in range(4)]
            matrix = MapOfFree(self.ring, 4, 4, rows)
            oracle = sympy.Matrix([[test_utils.to_sympy(e, symbols) for e in row]
                                   for row in rows]).det(method="berkowitz")
            expected = test_utils.from_sympy(self.ring, oracle, symbols)
            self.assertEqual(matpoly.determinant(matrix), expected)
            self.assertEqual(matpoly.bareiss_determinant(matrix), expected)

    def _entry(self, rng):
        if rng.random() < 0.3:
            return self.ring.zero()
        return generate.random_polynomial(self.ring, rng, 1, max_terms=2, min_degree=0)

    def test_minor_ideal_conventions(self):
        """Test if I_0 is the unit ideal and I_s is zero beyond the matrix size"""
        matrix = test_utils.make_map(self.ring, [["x", "y", "z"]])
        self.assertTrue(matpoly.minor_ideal(matrix, 0).is_unit())
        self.assertTrue(matpoly.minor_ideal(matrix, -1).is_unit())
        self.assertTrue(matpoly.minor_ideal(matrix, 2).is_zero())
        self.assertTrue(matpoly.minor_ideal(MapOfFree.zero(self.ring, 0, 0), 1).is_unit())
        self.assertTrue(matpoly.minor_ideal(MapOfFree.zero(self.ring, 2, 0), 1).is_zero())

    def test_minor_ideal_drops_zero_and_duplicate_minors(self):
        matrix = test_utils.make_map(self.ring, [["x", "2*x", "0"]])
        ideal = matpoly.minor_ideal(matrix, 1)
        self.assertEqual(list(ideal.generators), [self.ring.parse("x")])

    def test_minors_of_2x3(self):
        """Test if the 2x2 minors of a 2x3 matrix come in lexicographic column order"""
        matrix = test_utils.make_map(self.ring, [["x", "y", "z"], ["y", "z", "x"]])
        expected = [self.ring.parse(text) for text in ("x*z - y^2", "x^2 - y*z", "x*y - z^2")]
        self.assertEqual(matpoly.minors(matrix, 2), expected)

    def test_generic_rank(self):
        """Test if the generic rank is the size of the largest nonvanishing minor"""
        self.assertEqual(matpoly.generic_rank(
            test_utils.make_map(self.ring, [["x", "y"], ["x^2", "x*y"]])), 1)
        self.assertEqual(matpoly.generic_rank(
            test_utils.make_map(self.ring, [["x", "y"], ["y", "x"]])), 2)
        self.assertEqual(matpoly.generic_rank(MapOfFree.zero(self.ring, 3, 2)), 0)
        self.assertEqual(matpoly.generic_rank(
            test_utils.make_map(self.ring, [["0", "0", "x"], ["0", "y", "0"]])), 2)


class FittingIdealTest(unittest.TestCase):
    """Ideals of minors of random 3 x 3 maps over F_32003[x, y, z]"""

    def setUp(self):
        self.ring = test_utils.fp_ring("xyz")
        self.rng = np.random.default_rng(53)
        self.maps = [self._random_map() for _ in range(FITTING_MAPS)]

    def _random_map(self):
        rows = []
        for _ in range(3):
            rows.append([self.ring.zero() if self.rng.random() < 0.25 else
                         generate.random_polynomial(self.ring, self.rng, 1, max_terms=2)
                         for _ in range(3)])
        return MapOfFree(self.ring, 3, 3, rows)

    def test_ideals_of_minors_form_a_chain(self):
        """Test if I_s+1 lies in I_s for s = 0, ..., 3"""
        for matrix in self.maps:
            for size in range(4):
                larger = matpoly.minor_ideal(matrix, size)
                smaller = matpoly.minor_ideal(matrix, size + 1)
                self.assertTrue(larger.contains_ideal(smaller), (matrix, size))

    def test_ideals_of_minors_do_not_depend_on_row_and_column_order(self):
        for matrix in self.maps:
            permuted = matrix.permute([int(i) for i in self.rng.permutation(3)],
                                      [int(j) for j in self.rng.permutation(3)])
            for size in range(1, 4):
                self.assertTrue(matpoly.minor_ideal(matrix, size).same_ideal(
                    matpoly.minor_ideal(permuted, size)), (matrix, size))


if __name__ == "__main__":
    unittest.main()
