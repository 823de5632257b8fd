"""Krull dimension

Dimension of quotient rings R/I of a polynomial ring R = k[x_1, ..., x_v] and heights of ideals.
The dimension of R/I equals the dimension of R/in(I) for any global monomial order, and the
dimension of a monomial quotient is the largest size of a set of variables that contains the
support of no generator.

Dimensions live in :class:`ExtendedDim`, the integers extended by -inf and +inf. The zero ring (unit
ideal) has dimension -inf, like the zero module.

"""
import functools
import itertools
import logging
import math

from fitdim_utils.groebner import initial_ideal, reduced_groebner_basis

logger = logging.getLogger(__name__)


@functools.total_ordering
class ExtendedDim:
    """Integer or one of the two infinities

    Adding an integer keeps an infinity unchanged, the maximum with -inf is the identity and
    comparisons are total. -inf + inf is undefined and raises ValueError.

    Args:
        value (int or float): An integer, or math.inf / -math.inf.

    Attributes:
        value (int or float): The integer value or a float infinity.

    """
    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, ExtendedDim):
            value = value.value
        if isinstance(value, float):
            if not math.isinf(value):
                raise ValueError(f"Extended dimensions are integers or infinite, got {value}")
        else:
            value = int(value)
        self.value = value

    @classmethod
    def from_json(cls, value):
        """Inverse of :meth:`to_json`"""
        if value == "-inf":
            return MINUS_INFINITY
        if value == "inf":
            return PLUS_INFINITY
        return cls(int(value))

    def is_finite(self):
        return not isinstance(self.value, float)

    def to_json(self):
        """The integer, or the strings '-inf' / 'inf'"""
        if self.is_finite():
            return self.value
        return "-inf" if self.value < 0 else "inf"

    def __add__(self, other):
        other = ExtendedDim(other)
        if not self.is_finite() and not other.is_finite() and self.value != other.value:
            raise ValueError("-inf + inf is undefined")
        if not self.is_finite():
            return self
        if not other.is_finite():
            return other
        return ExtendedDim(self.value + other.value)

    __radd__ = __add__

    def __neg__(self):
        return ExtendedDim(-self.value)

    def __sub__(self, other):
        return self + (-ExtendedDim(other))

    def __rsub__(self, other):
        return ExtendedDim(other) + (-self)

    def __eq__(self, other):
        if isinstance(other, (int, float, ExtendedDim)):
            return self.value == ExtendedDim(other).value
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, (int, float, ExtendedDim)):
            return self.value < ExtendedDim(other).value
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __str__(self):
        return str(self.to_json())

    def __repr__(self):
        return f"ExtendedDim({self})"


MINUS_INFINITY = ExtendedDim(-math.inf)
PLUS_INFINITY = ExtendedDim(math.inf)


def sup(values):
    """Supremum of extended dimensions; -inf for an empty collection"""
    return max((ExtendedDim(value) for value in values), default=MINUS_INFINITY)


def inf(values):
    """Infimum of extended dimensions; +inf for an empty collection"""
    return min((ExtendedDim(value) for value in values), default=PLUS_INFINITY)


def dim_monomial_quotient(ring, monomials):
    """Krull dimension of R/(monomials)

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring R.
        monomials (list): Exponent tuples generating a monomial ideal.

    Returns:
        ExtendedDim:
            Largest size of a variable subset containing the support of no generator; -inf if
            the unit monomial is among the generators.

    """
    supports = []
    for mon in monomials:
        support = frozenset(idx for idx, exp in enumerate(mon) if exp)
        if not support:
            return MINUS_INFINITY
        supports.append(support)
    for size in range(ring.nvars, -1, -1):
        for subset in itertools.combinations(range(ring.nvars), size):
            subset = frozenset(subset)
            if not any(support <= subset for support in supports):
                return ExtendedDim(size)
    return ExtendedDim(0)


def dim_quotient(ideal):
    """Krull dimension of R/I

    Args:
        ideal (~fitdim_utils.groebner.IdealHandle): The ideal I.

    Returns:
        ExtendedDim:
            dim R/I, -inf for the unit ideal.

    """
    basis = reduced_groebner_basis(ideal)
    dim = dim_monomial_quotient(ideal.ring, initial_ideal(basis))
    logger.debug("dim R/I = %s for %d generators", dim, len(ideal.generators))
    return dim


def height(ideal):
    """Height of an ideal

    Over a polynomial ring, height(I) = v - dim R/I for proper ideals. The height of the unit ideal
    is not defined; +inf is returned, which is the usual convention for its grade.

    Args:
        ideal (~fitdim_utils.groebner.IdealHandle): The ideal.

    Returns:
        ExtendedDim:
            The height, or +inf for the unit ideal.

    """
    dim = dim_quotient(ideal)
    if not dim.is_finite():
        return PLUS_INFINITY
    return ExtendedDim(ideal.ring.nvars) - dim
