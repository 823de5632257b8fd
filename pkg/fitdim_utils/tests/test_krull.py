"""Tests for the krull module"""
import math
import unittest

import numpy as np

from tests import utils as test_utils

from fitdim_utils import generate, krull
from fitdim_utils.groebner import IdealHandle
from fitdim_utils.krull import MINUS_INFINITY, PLUS_INFINITY, ExtendedDim

RANDOM_IDEALS = 25


class ExtendedDimTest(unittest.TestCase):
    """Tests for the ExtendedDim class"""

    def test_infinities_absorb_integers(self):
        self.assertEqual(MINUS_INFINITY + 5, MINUS_INFINITY)
        self.assertEqual(PLUS_INFINITY - 5, PLUS_INFINITY)
        self.assertEqual(ExtendedDim(2) - 3, -1)

    def test_minus_inf_plus_inf_raises(self):
        with self.assertRaises(ValueError):
            _ = MINUS_INFINITY + PLUS_INFINITY

    def test_order_is_total(self):
        values = [ExtendedDim(3), PLUS_INFINITY, MINUS_INFINITY, ExtendedDim(-2)]
        self.assertEqual(sorted(values), [MINUS_INFINITY, -2, 3, PLUS_INFINITY])
        self.assertTrue(MINUS_INFINITY < -10**9)

    def test_sup_and_inf_of_empty_collections(self):
        self.assertEqual(krull.sup([]), MINUS_INFINITY)
        self.assertEqual(krull.inf([]), PLUS_INFINITY)
        self.assertEqual(krull.sup([1, MINUS_INFINITY, 4]), 4)

    def test_json_form(self):
        """Test if infinities are written as strings and read back"""
        self.assertEqual(MINUS_INFINITY.to_json(), "-inf")
        self.assertEqual(PLUS_INFINITY.to_json(), "inf")
        self.assertEqual(ExtendedDim.from_json("-inf"), MINUS_INFINITY)
        self.assertEqual(ExtendedDim.from_json(3), 3)

    def test_finite_floats_are_refused(self):
        with self.assertRaises(ValueError):
            ExtendedDim(1.5)
        self.assertFalse(ExtendedDim(-math.inf).is_finite())


class DimensionTest(unittest.TestCase):
    """Tests for dimensions and heights of quotient rings"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xyz")

    def _dim(self, *generators):
        return krull.dim_quotient(IdealHandle(self.ring, [self.ring.parse(g) for g in generators]))

    def test_known_dimensions(self):
        """Test if dimensions of standard quotients of k[x, y, z] are correct"""
        self.assertEqual(self._dim(), 3)
        self.assertEqual(self._dim("x"), 2)
        self.assertEqual(self._dim("x*y"), 2)
        self.assertEqual(self._dim("x", "y"), 1)
        self.assertEqual(self._dim("x*y", "x*z"), 2)
        self.assertEqual(self._dim("x", "y", "z"), 0)
        self.assertEqual(self._dim("x^2 - y", "y^2 - z"), 1)
        self.assertEqual(self._dim("x - 1", "x"), MINUS_INFINITY)

    def test_monomial_quotient_with_unit_is_empty(self):
        self.assertEqual(krull.dim_monomial_quotient(self.ring, [(0, 0, 0)]), MINUS_INFINITY)
        self.assertEqual(krull.dim_monomial_quotient(self.ring, [(1, 1, 0), (0, 1, 1)]), 2)

    def test_height(self):
        """Test if height = v - dim R/I and the unit ideal has height +inf"""
        ideal = IdealHandle(self.ring, [self.ring.parse("x"), self.ring.parse("y*z")])
        self.assertEqual(krull.height(ideal), 2)
        self.assertEqual(krull.height(IdealHandle.unit(self.ring)), PLUS_INFINITY)
        self.assertEqual(krull.height(IdealHandle.zero(self.ring)), 0)


class RandomIdealTest(unittest.TestCase):
    """Order independence, monotonicity and range of dim R/I on random ideals"""

    def setUp(self):
        self.ring = test_utils.fp_ring("xyz")
        self.lex_ring = self.ring.with_order("lex")
        rng = np.random.default_rng(47)
        self.ideals = [generate.random_sequence(self.ring, rng, maxlen=3, maxdeg=2)
                       for _ in range(RANDOM_IDEALS)]
        self.extra = [generate.random_polynomial(self.ring, rng, 2) for _ in range(RANDOM_IDEALS)]

    def test_lex_and_grevlex_give_the_same_dimension(self):
        for generators in self.ideals:
            grevlex = krull.dim_quotient(IdealHandle(self.ring, generators))
            lex = krull.dim_quotient(IdealHandle(self.lex_ring,
                                                 [g.reorder(self.lex_ring) for g in generators]))
            self.assertEqual(grevlex, lex, generators)

    def test_larger_ideal_has_smaller_quotient(self):
        """Test if I in J implies dim R/J <= dim R/I"""
        for generators, extra in zip(self.ideals, self.extra):
            small = IdealHandle(self.ring, generators)
            large = IdealHandle(self.ring, list(generators) + [extra])
            self.assertTrue(large.contains_ideal(small))
            self.assertLessEqual(krull.dim_quotient(large), krull.dim_quotient(small))

    def test_dimension_is_between_0_and_the_number_of_variables(self):
        for generators in self.ideals:
            ideal = IdealHandle(self.ring, generators)
            dim = krull.dim_quotient(ideal)
            if ideal.is_unit():
                self.assertEqual(dim, MINUS_INFINITY)
            else:
                self.assertTrue(0 <= dim <= self.ring.nvars, dim)


if __name__ == "__main__":
    unittest.main()
