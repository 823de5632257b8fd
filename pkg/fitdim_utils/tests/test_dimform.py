"""Tests for the dimform module

The random suites compare the Fitting ideal formulas with the homology of the complexes. They run
over F_32003 with at most three variables, ranks up to three, entries of degree up to two and
length up to four.

"""
import unittest

import numpy as np

from tests import utils as test_utils

from fitdim_utils import complexes, dimform, generate, homoracle
from fitdim_utils.complexes import FiniteFreeComplex
from fitdim_utils.groebner import IdealHandle
from fitdim_utils.krull import MINUS_INFINITY, PLUS_INFINITY, dim_quotient

SUITE_SEED = 2024
SUITE_SIZE = 200
KOSZUL_SIZE = 50
PAIR_SIZE = 50


class GoldenTest(unittest.TestCase):
    """Hand computed dimensions over k[x, y]"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xy")
        self.koszul_xy = test_utils.koszul(self.ring, "x", "y")
        self.koszul_x_xy = test_utils.koszul(self.ring, "x", "x*y")

    def test_single_module(self):
        cplx = FiniteFreeComplex.single(self.ring)
        self.assertEqual(dimform.dim_via_fitting(cplx).result, 2)
        self.assertEqual(dimform.dim_dual_via_fitting(cplx).result, 2)
        self.assertEqual(dimform.bh_codimension(cplx), 0)

    def test_invertible_differential(self):
        """Test if R -> R by a unit has dimension -inf and codimension +inf"""
        cplx = test_utils.split_complex(self.ring)
        self.assertEqual(dimform.dim_via_fitting(cplx).result, MINUS_INFINITY)
        self.assertEqual(dimform.dim_dual_via_fitting(cplx).result, MINUS_INFINITY)
        self.assertEqual(dimform.bh_codimension(cplx), PLUS_INFINITY)
        self.assertTrue(dimform.is_acyclic(cplx))

    def test_koszul_xy(self):
        self.assertEqual(dimform.dim_via_fitting(self.koszul_xy).result, 0)
        self.assertEqual(dimform.dim_dual_via_fitting(self.koszul_xy).result, 2)
        self.assertEqual(dimform.bh_codimension(self.koszul_xy), 0)

    def test_koszul_x_xy(self):
        self.assertEqual(dimform.dim_via_fitting(self.koszul_x_xy).result, 1)
        self.assertEqual(dimform.dim_dual_via_fitting(self.koszul_x_xy).result, 3)
        self.assertEqual(dimform.bh_codimension(self.koszul_x_xy), -1)

    def test_terms_of_koszul_xy(self):
        """Test if the terms are -inf, 0, -1, -inf for n = -1, 0, 1, 2"""
        report = dimform.dim_via_fitting(self.koszul_xy)
        self.assertEqual(report.formula, dimform.MAIN_FORMULA)
        self.assertEqual([term.degree for term in report.terms], [-1, 0, 1, 2])
        self.assertEqual([term.term for term in report.terms], [MINUS_INFINITY, 0, -1,
                                                                 MINUS_INFINITY])
        self.assertEqual(report.per_degree[0].size, 1)
        self.assertEqual(report.per_degree[0].generators, 2)

    def test_dual_terms_of_koszul_xy(self):
        report = dimform.dim_dual_via_fitting(self.koszul_xy)
        self.assertEqual(report.formula, dimform.DUAL_FORMULA)
        self.assertEqual([term.term for term in report.terms], [MINUS_INFINITY, 1, 2,
                                                                 MINUS_INFINITY])

    def test_margin_terms_never_contribute(self):
        """Test if two extra degrees on each side only add -inf terms"""
        for cplx in (self.koszul_xy, self.koszul_x_xy, FiniteFreeComplex.single(self.ring)):
            for formula in (dimform.dim_via_fitting, dimform.dim_dual_via_fitting):
                plain = formula(cplx)
                wide = formula(cplx, margin=2)
                self.assertEqual(wide.result, plain.result)
                extra = [term for term in wide.terms if term.degree not in plain.per_degree]
                self.assertEqual(len(extra), 4)
                self.assertTrue(all(term.term == MINUS_INFINITY for term in extra))

    def test_empty_complex(self):
        cplx = FiniteFreeComplex.empty(self.ring)
        self.assertEqual(dimform.dim_via_fitting(cplx).result, MINUS_INFINITY)
        self.assertEqual(dimform.bh_codimension(cplx), PLUS_INFINITY)

    def test_invalid_complex_raises(self):
        diff1 = test_utils.make_map(self.ring, [["x", "y"]])
        diff2 = test_utils.make_map(self.ring, [["y"], ["x"]])
        cplx = FiniteFreeComplex(self.ring, 0, 2, [1, 2, 1], [diff1, diff2])
        with self.assertRaises(ValueError):
            dimform.dim_via_fitting(cplx)

    def test_acyclicity(self):
        """Test if the rank and grade test accepts Koszul(x, y) and rejects Koszul(x, xy)"""
        certificate = dimform.is_acyclic(self.koszul_xy)
        self.assertTrue(certificate)
        self.assertEqual([step.grade for step in certificate.steps], [2, 2])
        rejected = dimform.is_acyclic(self.koszul_x_xy)
        self.assertFalse(rejected)
        self.assertEqual(rejected.steps[1].grade, 1)
        self.assertEqual(rejected.steps[1].required, 2)

    def test_bounds(self):
        """Test if both bounds are tight for Koszul(x, y) and the upper one for Koszul(x, xy)"""
        table = homoracle.homology_table(self.koszul_xy)
        bounds = dimform.check_bounds(self.koszul_xy, table)
        self.assertEqual((bounds.upper, bounds.lower, bounds.dim_dual), (2, 2, 2))
        self.assertEqual(bounds.violations(), [])
        bounds = dimform.check_bounds(self.koszul_x_xy,
                                      homoracle.homology_table(self.koszul_x_xy))
        self.assertEqual(bounds.upper, bounds.dim_dual)
        self.assertTrue(bounds.graded)
        split = test_utils.split_complex(self.ring)
        bounds = dimform.check_bounds(split, homoracle.homology_table(split))
        self.assertTrue(bounds.exact)
        self.assertEqual(bounds.to_json()['upper'], None)


class RandomSuiteTest(unittest.TestCase):
    """Formulas against the homology on random complexes"""

    @classmethod
    def setUpClass(cls):
        cls.suite = list(generate.random_suite(SUITE_SEED, SUITE_SIZE, nvars=3, maxdeg=2,
                                               maxrank=3, length=4))

    def test_fitting_dimension_equals_homology_dimension(self):
        for cplx in self.suite:
            dim, table = homoracle.dim_via_homology(cplx)
            self.assertEqual(dimform.dim_via_fitting(cplx).result, dim, cplx.name)
            bounds = dimform.check_bounds(cplx, table)
            self.assertEqual(bounds.violations(), [], cplx.name)
            self.assertEqual(bool(dimform.is_acyclic(cplx)), table.is_acyclic(), cplx.name)

    def test_duality(self):
        for cplx in self.suite:
            dual = complexes.dual_complex(cplx)
            self.assertEqual(dimform.dim_dual_via_fitting(cplx).result,
                             dimform.dim_via_fitting(dual).result, cplx.name)

    def test_expected_ranks_of_dual(self):
        """Test if s_n of the dual complex is r_{-n} of the complex"""
        for cplx in self.suite[:50]:
            profile = complexes.alternating_sums(cplx)
            dual_profile = complexes.alternating_sums(complexes.dual_complex(cplx))
            for degree in range(-cplx.high - 2, -cplx.low + 2):
                self.assertEqual(dual_profile.s(degree), profile.r(-degree))


class KoszulFamilyTest(unittest.TestCase):
    """Koszul complexes on random sequences"""

    def test_dimension_is_dimension_of_quotient(self):
        """Test if dim Koszul(f) = dim R/(f), also for the dual formula of the dual complex"""
        for sequence, cplx in generate.koszul_family(17, KOSZUL_SIZE, nvars=3, maxlen=3,
                                                     maxdeg=2):
            expected = dim_quotient(IdealHandle(cplx.ring, sequence))
            self.assertEqual(dimform.dim_via_fitting(cplx).result, expected, cplx.name)
            self.assertEqual(dimform.dim_dual_via_fitting(cplx).result,
                             dimform.dim_via_fitting(complexes.dual_complex(cplx)).result)

    def test_regular_sequences_are_acyclic(self):
        ring = test_utils.fp_ring("xyz")
        for sequence in (["x"], ["x", "y"], ["x", "y", "z"], ["x*y", "x + y", "z^2"]):
            cplx = complexes.koszul_complex(ring, sequence)
            self.assertTrue(dimform.is_acyclic(cplx), sequence)
            self.assertTrue(dimform.bh_codimension(cplx) >= 0)


class MetamorphicTest(unittest.TestCase):
    """Shift and sum laws"""

    def test_shift_law(self):
        """Test if dim F[k] = dim F - k on random, also non-minimal and non-graded, complexes"""
        suite = list(generate.random_suite(31, PAIR_SIZE, nvars=2, maxdeg=2))
        self.assertTrue(any(not complexes.validate_complex(c).minimal for c in suite))
        self.assertTrue(any(not complexes.is_graded(c) for c in suite))
        for cplx in suite:
            dim = dimform.dim_via_fitting(cplx).result
            for steps in range(-2, 3):
                shifted = complexes.shift(cplx, steps)
                self.assertEqual(dimform.dim_via_fitting(shifted).result, dim - steps)

    def test_sum_law(self):
        rng = np.random.default_rng(37)
        ring = generate.make_ring(2)
        for _ in range(PAIR_SIZE):
            first = generate.random_complex(ring, rng, maxrank=2, length=3, blocks=2)
            second = generate.random_complex(ring, rng, maxrank=2, length=3, blocks=2)
            expected = max(dimform.dim_via_fitting(first).result,
                           dimform.dim_via_fitting(second).result)
            total = complexes.direct_sum(first, second)
            self.assertEqual(dimform.dim_via_fitting(total).result, expected)


if __name__ == "__main__":
    unittest.main()
