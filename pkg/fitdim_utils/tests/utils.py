"""Utility functions for the tests

Rings, golden complexes and conversions to sympy, which serves as an independent oracle for
Gröbner bases and determinants.

"""
import os
from fractions import Fraction

import sympy
import yaml

from fitdim_utils import complexes
from fitdim_utils.matpoly import MapOfFree
from fitdim_utils.polyring import CoefficientField, PolyRing

TEST_DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "test_data")


def data_file(name):
    """Path of a file in the test_data folder"""
    return os.path.join(TEST_DATA, name)


def read_data(name):
    with open(data_file(name), encoding="utf-8") as infile:
        return infile.read()


def qq_ring(variables="xyz", order="grevlex"):
    return PolyRing(CoefficientField.rationals(), list(variables), order)


def fp_ring(variables="xyz", order="grevlex", modulus=32003):
    return PolyRing(CoefficientField.prime_field(modulus), list(variables), order)


def make_map(ring, rows, source_rank=None):
    """MapOfFree from rows of polynomial strings"""
    return MapOfFree.from_rows(ring, rows, source_rank)


def koszul(ring, *sequence):
    return complexes.koszul_complex(ring, list(sequence))


def split_complex(ring):
    """R -> R by the identity, in degrees 0..1"""
    return complexes.FiniteFreeComplex(ring, 0, 1, [1, 1], [make_map(ring, [["1"]])])


def to_sympy(poly, symbols):
    """Polynomial as a sympy expression with rational coefficients"""
    field = poly.ring.field
    expr = sympy.Integer(0)
    for mon, coeff in poly.terms:
        coeff = field.symmetric(coeff)
        term = sympy.Rational(Fraction(coeff).numerator, Fraction(coeff).denominator)
        for symbol, exp in zip(symbols, mon):
            term *= symbol**exp
        expr += term
    return expr


def from_sympy(ring, expr, symbols):
    """sympy expression with rational coefficients as a polynomial of `ring`"""
    poly = sympy.Poly(sympy.expand(expr), *symbols)
    terms = [(tuple(int(exp) for exp in mon),
              Fraction(int(sympy.fraction(coeff)[0]), int(sympy.fraction(coeff)[1])))
             for mon, coeff in poly.terms()]
    return ring.from_terms(terms)


def sympy_symbols(ring):
    return sympy.symbols(" ".join(ring.variables), seq=True)


def write_config(cfg, config_file):
    """Write data to config yaml

    Args:
         cfg (dict): Configuration dictionary.
         config_file (str): Configuration file.

    """
    with open(config_file, "w", encoding="utf-8") as outfile:
        yaml.dump(cfg, outfile, default_flow_style=False)


def delete_content(folder):
    """Delete files and folders at a given path

    Args:
        folder (str): Parent folder.

    """
    for root, _dirs, files in os.walk(folder, topdown=False):
        for file in files:
            os.remove(os.path.join(root, file))
        os.rmdir(root)
