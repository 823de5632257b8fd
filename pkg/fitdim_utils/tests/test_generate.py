"""Tests for the generate module"""
import unittest

import numpy as np

from fitdim_utils import cli, complexes, generate


class GenerateTest(unittest.TestCase):
    """Tests for the random complexes"""

    def test_make_ring(self):
        ring = generate.make_ring(3)
        self.assertEqual(ring.variables, ("x", "y", "z"))
        self.assertEqual(ring.field.characteristic, 32003)
        self.assertEqual(generate.make_ring(10, "QQ").variables[9], "x10")

    def test_same_seed_gives_same_suite(self):
        first = [cli.render_document(c) for c in generate.random_suite(5, 10)]
        second = [cli.render_document(c) for c in generate.random_suite(5, 10)]
        self.assertEqual(first, second)

    def test_complex_seed_does_not_depend_on_suite_size(self):
        """Test if complex i is the same in a suite of 3 and of 6 complexes"""
        short = list(generate.random_suite(9, 3))
        long = list(generate.random_suite(9, 6))
        self.assertEqual(short, long[:3])

    def test_random_complexes_respect_limits(self):
        """Test if random complexes are valid and within rank, degree and length limits"""
        for cplx in generate.random_suite(13, 40, nvars=3, maxdeg=2, maxrank=3, length=4):
            self.assertTrue(complexes.validate_complex(cplx).valid)
            self.assertLessEqual(max(cplx.ranks), 3)
            self.assertLessEqual(cplx.high - cplx.low, 4)
            self.assertGreaterEqual(cplx.low, 0)
            for diff in cplx.differentials.values():
                self.assertLessEqual(diff.max_degree(), 2)

    def test_some_random_complexes_are_not_minimal(self):
        reports = [complexes.validate_complex(c) for c in generate.random_suite(3, 30)]
        self.assertTrue(any(not report.minimal for report in reports))

    def test_random_polynomial_degrees(self):
        ring = generate.make_ring(2)
        rng = np.random.default_rng(0)
        for _ in range(50):
            poly = generate.random_polynomial(ring, rng, 3, min_degree=2)
            self.assertTrue(poly)
            self.assertTrue(all(2 <= sum(mon) <= 3 for mon in poly.monomials()))

    def test_koszul_family(self):
        for sequence, cplx in generate.koszul_family(1, 10, nvars=2, maxlen=3, maxdeg=2):
            self.assertTrue(1 <= len(sequence) <= 3)
            self.assertEqual(cplx.high, len(sequence))


if __name__ == "__main__":
    unittest.main()
