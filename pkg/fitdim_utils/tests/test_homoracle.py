"""Tests for the homoracle module"""
import itertools
import unittest

import numpy as np
import sympy

from tests import utils as test_utils

from fitdim_utils import complexes, generate, homoracle
from fitdim_utils.complexes import FiniteFreeComplex
from fitdim_utils.exceptions import LiftError
from fitdim_utils.homoracle import FreeModuleVector, Presentation
from fitdim_utils.krull import MINUS_INFINITY, PLUS_INFINITY
from fitdim_utils.matpoly import MapOfFree

# Kernel elements are enumerated up to the largest entry degree plus this bound
ENUMERATION_SLACK = 2


class KernelTest(unittest.TestCase):
    """Tests for kernel generators"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xy")

    def _vector(self, *components):
        return FreeModuleVector.from_components(self.ring, [self.ring.parse(c) for c in components])

    def _assert_up_to_sign(self, vector, expected):
        self.assertTrue(vector == expected or -vector == expected, f"{vector} != ±{expected}")

    def test_koszul_syzygy(self):
        gens = homoracle.kernel_gens(test_utils.make_map(self.ring, [["x", "y"]]))
        self.assertEqual(len(gens), 1)
        self._assert_up_to_sign(gens[0], self._vector("y", "-x"))

    def test_kernel_of_x_xy(self):
        gens = homoracle.kernel_gens(test_utils.make_map(self.ring, [["x", "x*y"]]))
        self.assertEqual(len(gens), 1)
        self._assert_up_to_sign(gens[0], self._vector("-y", "1"))

    def test_injective_map_has_no_kernel(self):
        self.assertEqual(homoracle.kernel_gens(MapOfFree.identity(self.ring, 3)), [])

    def test_kernel_of_zero_row_map_is_everything(self):
        gens = homoracle.kernel_gens(MapOfFree.zero(self.ring, 0, 2))
        self.assertEqual(gens, [self._vector("1", "0"), self._vector("0", "1")])

    def test_kernel_generators_are_annihilated(self):
        """Test if m v = 0 for every generator of random maps"""
        rng = np.random.default_rng(23)
        for matrix in self._random_maps(rng, 15):
            for gen in homoracle.kernel_gens(matrix):
                self.assertTrue(all(not entry for entry in homoracle.apply_map(matrix, gen)))

    def test_enumerated_kernel_elements_reduce_to_zero(self):
        """Test if every kernel element up to a degree bound lies in the generated submodule"""
        rng = np.random.default_rng(29)
        for matrix in self._random_maps(rng, 10):
            gens = homoracle.kernel_gens(matrix)
            basis = homoracle.module_groebner(gens) if gens else []
            bound = matrix.max_degree() + ENUMERATION_SLACK
            for element in self._enumerate_kernel(matrix, bound):
                self.assertFalse(homoracle.module_normal_form(element, basis), str(element))

    def _random_maps(self, rng, count):
        for _ in range(count):
            rows = int(rng.integers(1, 3))
            rows = [[self._entry(rng) for _ in range(3)] for _ in range(rows)]
            yield MapOfFree(self.ring, len(rows), 3, rows)

    def _entry(self, rng):
        if rng.random() < 0.2:
            return self.ring.zero()
        return generate.random_polynomial(self.ring, rng, 1, max_terms=2)

    def _enumerate_kernel(self, matrix, bound):
        """Basis of the kernel elements whose components have degree <= bound"""
        monomials = [mon for mon in itertools.product(range(bound + 1), repeat=self.ring.nvars)
                     if sum(mon) <= bound]
        unknowns = [(pos, mon) for pos in range(matrix.source_rank) for mon in monomials]
        equations = {}
        for col, (pos, mon) in enumerate(unknowns):
            image = homoracle.apply_map(matrix, homoracle._unit_vector(self.ring,
                                                                       matrix.source_rank, pos))
            for row, entry in enumerate(image):
                for out_mon, coeff in entry.mul_term(mon, 1).terms:
                    equations.setdefault((row, out_mon), {})[col] = coeff
        system = sympy.zeros(len(equations), len(unknowns))
        for idx, coeffs in enumerate(equations.values()):
            for col, coeff in coeffs.items():
                system[idx, col] = sympy.Rational(coeff.numerator, coeff.denominator)
        for solution in system.nullspace():
            collected = {}
            for col, value in enumerate(solution):
                if value != 0:
                    num, den = sympy.fraction(value)
                    collected[unknowns[col]] = self.ring.field.convert(int(num)) / int(den)
            yield FreeModuleVector.from_dict(self.ring, matrix.source_rank, collected)


class HomologyTest(unittest.TestCase):
    """Tests for homology presentations and the homology table"""

    def setUp(self):
        self.ring = test_utils.qq_ring("xy")
        self.koszul_xy = test_utils.koszul(self.ring, "x", "y")
        self.koszul_x_xy = test_utils.koszul(self.ring, "x", "x*y")

    def test_koszul_xy_presentations(self):
        """Test if H_0 = R/(x, y) and the higher homology vanishes"""
        h_0 = homoracle.homology_presentation(self.koszul_xy, 0)
        self.assertEqual((h_0.generator_count, h_0.relation_count), (1, 2))
        self.assertEqual(homoracle.dim_module(h_0), 0)
        for degree in (1, 2):
            h_n = homoracle.homology_presentation(self.koszul_xy, degree)
            self.assertEqual(homoracle.dim_module(h_n), MINUS_INFINITY)

    def test_koszul_x_xy_first_homology(self):
        """Test if H_1 has one generator and the relation x, up to a unit"""
        h_1 = homoracle.homology_presentation(self.koszul_x_xy, 1)
        self.assertEqual(h_1.generator_count, 1)
        self.assertEqual(h_1.relation_count, 1)
        self.assertEqual(h_1.relations.entry(0, 0).monic(), self.ring.parse("x"))
        self.assertEqual(homoracle.dim_module(h_1), 1)

    def test_dim_module(self):
        def presentation(rows, source_rank=None):
            relations = test_utils.make_map(self.ring, rows, source_rank)
            return Presentation(self.ring, relations.target_rank, relations)

        self.assertEqual(homoracle.dim_module(presentation([["x"]])), 1)
        self.assertEqual(homoracle.dim_module(presentation([[]], 0)), 2)
        self.assertEqual(homoracle.dim_module(presentation([["1"]])), MINUS_INFINITY)
        self.assertEqual(homoracle.dim_module(Presentation(self.ring, 0,
                                                           MapOfFree.zero(self.ring, 0, 0))),
                         MINUS_INFINITY)
        self.assertEqual(homoracle.dim_module_initial(presentation([["x", "0"], ["0", "x*y"]])),
                         1)

    def test_prune_removes_unit_relations(self):
        relations = test_utils.make_map(self.ring, [["1", "x"], ["y", "x*y"]])
        pruned = homoracle.prune_presentation(Presentation(self.ring, 2, relations))
        self.assertEqual(pruned.generator_count, 1)
        self.assertEqual(homoracle.dim_module(pruned), 2)

    def test_dim_via_homology(self):
        self.assertEqual(homoracle.dim_via_homology(self.koszul_xy)[0], 0)
        self.assertEqual(homoracle.dim_via_homology(self.koszul_x_xy)[0], 1)
        dim, table = homoracle.dim_via_homology(test_utils.split_complex(self.ring))
        self.assertEqual(dim, MINUS_INFINITY)
        self.assertEqual(table.inf_h, PLUS_INFINITY)
        self.assertEqual(table.sup_h, MINUS_INFINITY)
        self.assertTrue(table.is_acyclic())

    def test_table_of_koszul_x_xy(self):
        table = homoracle.homology_table(self.koszul_x_xy)
        self.assertEqual(table.nonzero_degrees(), [0, 1])
        self.assertEqual((table.inf_h, table.sup_h), (0, 1))
        self.assertFalse(table.is_acyclic())
        self.assertEqual(table.to_json()['degrees'][1]['dim'], 1)

    def test_foxby_codimension(self):
        """Test if inf{v - dim H_n + n} is 2 for Koszul(x, y) and 1 for Koszul(x, xy)"""
        self.assertEqual(homoracle.foxby_codimension(homoracle.homology_table(self.koszul_xy)), 2)
        self.assertEqual(homoracle.foxby_codimension(homoracle.homology_table(self.koszul_x_xy)),
                         1)

    def test_projective_dimension(self):
        """Test if the resolution Koszul(x, y) of k has projective dimension 2"""
        value, dual_acyclic = homoracle.proj_dim(self.koszul_xy)
        self.assertEqual(value, 2)
        self.assertTrue(dual_acyclic)
        self.assertEqual(homoracle.homology_table(self.koszul_xy).dual_proj_dim, 0)

    def test_projective_dimension_is_flagged_for_cyclic_duals(self):
        """Test if the dual of Koszul(x, xy) is flagged, its homology is not only at the bottom"""
        value, dual_acyclic = homoracle.proj_dim(self.koszul_x_xy)
        self.assertEqual(value, 2)
        self.assertFalse(dual_acyclic)
        self.assertTrue(complexes.is_graded(self.koszul_x_xy))

    def test_regular_koszul_complexes_have_no_higher_homology(self):
        ring = test_utils.fp_ring("xyz")
        cplx = complexes.koszul_complex(ring, ["x^2", "y^2", "z"])
        table = homoracle.homology_table(cplx)
        self.assertEqual(table.nonzero_degrees(), [0])

    def test_boundary_that_is_no_cycle_raises(self):
        """Test if an unchecked complex with d d != 0 fails to lift"""
        diff1 = test_utils.make_map(self.ring, [["x", "y"]])
        diff2 = test_utils.make_map(self.ring, [["1"], ["0"]])
        cplx = FiniteFreeComplex(self.ring, 0, 2, [1, 2, 1], [diff1, diff2])
        cplx._validated = True
        with self.assertRaises(LiftError):
            homoracle.homology_presentation(cplx, 1)


if __name__ == "__main__":
    unittest.main()
