"""Dimension formulas

The dimension of a finite free complex F in degrees [a, b] is read off the ideals of minors of its
differentials:

    dim F = sup{ dim R/I_{s_n}(d_{n+1}) - n }

and the dimension of the dual complex Hom(F, R) from the expected ranks:

    dim Hom(F, R) = sup{ dim R/I_{r_n}(d_n) + n }.

Outside the evaluated degree ranges every ideal is the unit ideal and the terms are -inf. This
module also holds the codimension derived from the dual, the bounds of the dual dimension in terms
of the homology, and the rank and grade test for acyclicity.

"""
import logging

from fitdim_utils import complexes
from fitdim_utils.krull import (MINUS_INFINITY, PLUS_INFINITY, ExtendedDim, dim_quotient, height,
                                sup)
from fitdim_utils.matpoly import generic_rank, minor_ideal

logger = logging.getLogger(__name__)

MAIN_FORMULA = "dim"
DUAL_FORMULA = "dim_dual"


class DimTerm:
    """One degree of a dimension formula

    Attributes:
        degree (int): Degree n.
        size (int): Minor size (s_n or r_n).
        generators (int): Number of minor generators of the ideal.
        basis_size (int): Size of the reduced Gröbner basis of the ideal.
        dim_quotient (ExtendedDim): dim R/I.
        term (ExtendedDim): dim R/I - n or dim R/I + n.

    """
    def __init__(self, degree, size, generators, basis_size, dim_quotient_, term):
        self.degree = degree
        self.size = size
        self.generators = generators
        self.basis_size = basis_size
        self.dim_quotient = dim_quotient_
        self.term = term

    def to_json(self):
        return {"degree": self.degree, "size": self.size, "generators": self.generators,
                "basis_size": self.basis_size, "dim_quotient": self.dim_quotient.to_json(),
                "term": self.term.to_json()}

    def __repr__(self):
        return f"DimTerm(n={self.degree}, size={self.size}, term={self.term})"


class DimReport:
    """Terms of a dimension formula and their supremum

    Attributes:
        formula (str): "dim" for the dimension of the complex, "dim_dual" for its dual.
        terms (list): :class:`DimTerm` per evaluated degree, ascending.
        result (ExtendedDim): Supremum of the terms.

    """
    def __init__(self, formula, terms):
        self.formula = formula
        self.terms = list(terms)
        self.result = sup(term.term for term in self.terms)

    @property
    def per_degree(self):
        """dict: Map degree -> :class:`DimTerm`."""
        return {term.degree: term for term in self.terms}

    def to_json(self):
        return {"formula": self.formula, "result": self.result.to_json(),
                "terms": [term.to_json() for term in self.terms]}

    def __repr__(self):
        return f"DimReport({self.formula}: {self.result})"


def dim_via_fitting(complex_, margin=0):
    """Dimension of a complex from the ideals I_{s_n}(d_{n+1})

    Args:
        complex_ (~fitdim_utils.complexes.FiniteFreeComplex): The complex.
        margin (int): Extra degrees evaluated on both sides of [a-1, b]; their terms are -inf.

    Returns:
        DimReport:
            Terms for n in [a-1-margin, b+margin] and their supremum.

    """
    complexes.require_valid(complex_)
    if complex_.is_empty():
        return DimReport(MAIN_FORMULA, [])
    profile = complexes.alternating_sums(complex_)
    terms = []
    for degree in range(complex_.low - 1 - margin, complex_.high + margin + 1):
        size = profile.s(degree)
        terms.append(_term(complex_.differential(degree + 1), size, degree, -degree))
    report = DimReport(MAIN_FORMULA, terms)
    logger.debug("dim via Fitting ideals of %r: %s", complex_, report.result)
    return report


def dim_dual_via_fitting(complex_, margin=0):
    """Dimension of Hom(F, R) from the ideals I_{r_n}(d_n) of F itself

    Args:
        complex_ (~fitdim_utils.complexes.FiniteFreeComplex): The complex F.
        margin (int): Extra degrees evaluated on both sides of [a, b+1].

    Returns:
        DimReport:
            Terms for n in [a-margin, b+1+margin] and their supremum.

    """
    complexes.require_valid(complex_)
    if complex_.is_empty():
        return DimReport(DUAL_FORMULA, [])
    profile = complexes.alternating_sums(complex_)
    terms = []
    for degree in range(complex_.low - margin, complex_.high + 2 + margin):
        size = profile.r(degree)
        terms.append(_term(complex_.differential(degree), size, degree, degree))
    report = DimReport(DUAL_FORMULA, terms)
    logger.debug("dim of the dual of %r: %s", complex_, report.result)
    return report


def bh_codimension(complex_):
    """Codimension dim R - dim Hom(F, R); +inf for an exact complex"""
    dual_dim = dim_dual_via_fitting(complex_).result
    if dual_dim == MINUS_INFINITY:
        return PLUS_INFINITY
    return ExtendedDim(complex_.ring.nvars) - dual_dim


class BoundReport:
    """Bounds of dim Hom(F, R) by the homology of F

    The upper bound dim Hom(F, R) <= dim R + sup H(F) holds for every complex. The lower bound
    dim R + inf H(F) <= dim Hom(F, R) is asserted only for graded complexes.

    Attributes:
        dim_dual (ExtendedDim): dim Hom(F, R).
        upper (ExtendedDim): dim R + sup H(F).
        lower (ExtendedDim): dim R + inf H(F).
        upper_holds (bool): Whether the upper bound holds.
        lower_holds (bool): Whether the lower bound holds.
        graded (bool): Whether the complex is graded.
        exact (bool): Whether F has no homology; both bounds are vacuous then.

    """
    def __init__(self, dim_dual, nvars, inf_h, sup_h, graded):
        self.dim_dual = dim_dual
        self.graded = graded
        self.exact = sup_h == MINUS_INFINITY
        if self.exact:
            self.upper = self.lower = None
            self.upper_holds = self.lower_holds = True
        else:
            self.upper = ExtendedDim(nvars) + sup_h
            self.lower = ExtendedDim(nvars) + inf_h
            self.upper_holds = dim_dual <= self.upper
            self.lower_holds = self.lower <= dim_dual

    def violations(self):
        """Messages for every asserted bound that fails"""
        messages = []
        if not self.upper_holds:
            messages.append(f"upper bound violated: dim_dual = {self.dim_dual} > {self.upper}")
        if self.graded and not self.lower_holds:
            messages.append(f"lower bound violated: dim_dual = {self.dim_dual} < {self.lower}")
        return messages

    def to_json(self):
        return {"exact": self.exact, "graded": self.graded, "dim_dual": self.dim_dual.to_json(),
                "upper": None if self.upper is None else self.upper.to_json(),
                "lower": None if self.lower is None else self.lower.to_json(),
                "upper_holds": self.upper_holds, "lower_holds": self.lower_holds}


def check_bounds(complex_, homology):
    """Compare dim Hom(F, R) with the homology bounds

    Args:
        complex_ (~fitdim_utils.complexes.FiniteFreeComplex): The complex F.
        homology (~fitdim_utils.homoracle.HomologyTable): Homology of F.

    Returns:
        BoundReport:
            The report.

    """
    dim_dual = dim_dual_via_fitting(complex_).result
    return BoundReport(dim_dual, complex_.ring.nvars, homology.inf_h, homology.sup_h,
                       complexes.is_graded(complex_))


class AcyclicityStep:
    """Rank and grade condition in one degree

    Attributes:
        degree (int): Degree n.
        expected_rank (int): r_n.
        rank (int): Generic rank of d_n.
        grade (ExtendedDim): Grade of I_{r_n}(d_n), +inf for the unit ideal.
        required (int): n - a.
        holds (bool): Whether both conditions hold.

    """
    def __init__(self, degree, expected_rank, rank, grade, required):
        self.degree = degree
        self.expected_rank = expected_rank
        self.rank = rank
        self.grade = grade
        self.required = required
        self.holds = rank == expected_rank and grade >= required

    def to_json(self):
        return {"degree": self.degree, "expected_rank": self.expected_rank, "rank": self.rank,
                "grade": self.grade.to_json(), "required": self.required, "holds": self.holds}


class AcyclicityCertificate:
    """Outcome of :func:`is_acyclic`; truthy iff the complex is acyclic"""
    def __init__(self, steps):
        self.steps = list(steps)
        self.acyclic = all(step.holds for step in self.steps)

    def __bool__(self):
        return self.acyclic

    def to_json(self):
        return {"acyclic": self.acyclic, "steps": [step.to_json() for step in self.steps]}


def is_acyclic(complex_):
    """Rank and grade test for H_n(F) = 0 for all n > a

    F is acyclic iff for every n in [a+1, b] the generic rank of d_n is the expected rank r_n and
    grade I_{r_n}(d_n) >= n - a. Over a polynomial ring the grade is the height.

    Args:
        complex_ (~fitdim_utils.complexes.FiniteFreeComplex): The complex.

    Returns:
        AcyclicityCertificate:
            Per degree ranks and grades.

    """
    complexes.require_valid(complex_)
    profile = complexes.alternating_sums(complex_)
    steps = []
    for degree in range(complex_.low + 1, complex_.high + 1):
        diff = complex_.differential(degree)
        expected = profile.r(degree)
        steps.append(AcyclicityStep(degree, expected, generic_rank(diff),
                                    height(minor_ideal(diff, expected)),
                                    degree - complex_.low))
    return AcyclicityCertificate(steps)


def _term(diff, size, degree, offset):
    ideal = minor_ideal(diff, size)
    dim = dim_quotient(ideal)
    term = dim + offset if dim.is_finite() else dim
    logger.debug("n = %d: size %d, %d generators, dim R/I = %s, term %s", degree, size,
                 len(ideal.generators), dim, term)
    return DimTerm(degree, size, len(ideal.generators), len(ideal.groebner_basis()), dim, term)
