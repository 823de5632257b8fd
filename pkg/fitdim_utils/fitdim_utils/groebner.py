"""Gröbner bases

Buchberger's algorithm with the normal selection strategy and Buchberger's product and chain
criteria, multivariate division (normal forms), reduced Gröbner bases, initial ideals and ideal
membership. Every dimension query of the package ends up here.

A time budget can be put on each basis computation with :func:`time_budget`; exceeding it raises
:class:`~fitdim_utils.exceptions.GroebnerTimeout`.

"""
import contextlib
import contextvars
import logging
import time

from fitdim_utils.exceptions import GroebnerTimeout, StructuralError
from fitdim_utils.polyring import (monomial_coprime, monomial_div, monomial_divides,
                                   monomial_lcm, monomial_mul)

logger = logging.getLogger(__name__)

_BUDGET_MS = contextvars.ContextVar("groebner_budget_ms", default=None)


@contextlib.contextmanager
def time_budget(budget_ms):
    """Limit the run time of every Gröbner basis computation within the context

    Args:
        budget_ms (int): Budget per basis in milliseconds. None disables the limit.

    """
    token = _BUDGET_MS.set(budget_ms)
    try:
        yield
    finally:
        _BUDGET_MS.reset(token)


class GroebnerBasis:
    """Gröbner basis of an ideal

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring; its order is the basis order.
        elements (list): Monic basis polynomials.
        reduced (bool): Whether the basis is the reduced Gröbner basis.

    Attributes:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        elements (tuple): Basis polynomials, sorted descending by leading monomial.
        order (~fitdim_utils.polyring.MonomialOrder): Order the basis refers to.
        reduced (bool): Whether the basis is reduced.

    """
    def __init__(self, ring, elements, reduced=True):
        self.ring = ring
        self.elements = tuple(elements)
        self.order = ring.order
        self.reduced = reduced

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit(self):
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def reduce(self, poly):
        """Normal form of `poly` with respect to the basis"""
        return normal_form(poly, self.elements)

    def contains(self, poly):
        return not self.reduce(poly)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}])"


class IdealHandle:
    """Ideal of a polynomial ring given by generators

    The reduced Gröbner basis is computed on demand and cached on the handle.

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        generators (list): Generating polynomials of `ring`.

    Attributes:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        generators (tuple): The generators as given (zeros included).

    """
    def __init__(self, ring, generators):
        generators = tuple(generators)
        for gen in generators:
            if gen.ring != ring:
                raise StructuralError(f"Generator {gen} is not an element of {ring}")
        self.ring = ring
        self.generators = generators
        self._basis = None

    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    @classmethod
    def zero(cls, ring):
        return cls(ring, [])

    @property
    def reduced_basis(self):
        """GroebnerBasis: The cached reduced basis, None before the first computation."""
        return self._basis

    def groebner_basis(self):
        """The reduced Gröbner basis (computed once)"""
        return reduced_groebner_basis(self)

    def contains(self, poly):
        return self.groebner_basis().contains(poly)

    def contains_ideal(self, other):
        """Whether every generator of `other` lies in this ideal"""
        basis = self.groebner_basis()
        return all(basis.contains(gen) for gen in other.generators)

    def same_ideal(self, other):
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self):
        return self.groebner_basis().is_unit()

    def is_zero(self):
        return all(not gen for gen in self.generators)

    def __repr__(self):
        return f"IdealHandle({', '.join(str(g) for g in self.generators)})"


def normal_form(poly, basis):
    """Remainder of the multivariate division of `poly` by `basis`

    No monomial of the result is divisible by a leading monomial of the basis, and the difference
    between `poly` and the result lies in the ideal generated by the basis.

    Args:
        poly (~fitdim_utils.polyring.Polynomial): Dividend.
        basis (list): Divisors; zeros are ignored.

    Returns:
        ~fitdim_utils.polyring.Polynomial:
            The remainder.

    """
    divisors = []
    for gen in basis:
        if gen:
            lead_mon, lead_coeff = gen.terms[0]
            divisors.append((lead_mon, gen.ring.field.inv(lead_coeff), gen.terms[1:]))
    if not divisors or not poly:
        return poly
    ring = poly.ring
    field = ring.field
    key = ring.order.key
    rest = dict(poly.terms)
    remainder = {}
    while rest:
        mon = max(rest, key=key)
        coeff = rest.pop(mon)
        for lead_mon, lead_inv, tail in divisors:
            if monomial_divides(lead_mon, mon):
                q_mon = monomial_div(mon, lead_mon)
                q_coeff = field.mul(coeff, lead_inv)
                for t_mon, t_coeff in tail:
                    t_mon = monomial_mul(t_mon, q_mon)
                    value = field.sub(rest.get(t_mon, 0), field.mul(t_coeff, q_coeff))
                    if value == 0:
                        rest.pop(t_mon, None)
                    else:
                        rest[t_mon] = value
                break
        else:
            remainder[mon] = coeff
    return ring._from_dict(remainder)


def s_polynomial(left, right):
    """S-polynomial of two nonzero polynomials"""
    field = left.ring.field
    mon1, coeff1 = left.terms[0]
    mon2, coeff2 = right.terms[0]
    lcm = monomial_lcm(mon1, mon2)
    return left.mul_term(monomial_div(lcm, mon1), field.inv(coeff1)) - \
        right.mul_term(monomial_div(lcm, mon2), field.inv(coeff2))


def reduced_groebner_basis(ideal):
    """Reduced Gröbner basis of an ideal in its ring's order

    The result is cached on the handle. The unit ideal yields [1] and the zero ideal the empty
    basis.

    Args:
        ideal (IdealHandle): The ideal.

    Returns:
        GroebnerBasis:
            The unique reduced Gröbner basis.

    """
    if ideal._basis is None:
        elements = buchberger(ideal.generators)
        logger.debug("Reduced Gröbner basis of %d generators has %d elements",
                     len(ideal.generators), len(elements))
        ideal._basis = GroebnerBasis(ideal.ring, elements, reduced=True)
    return ideal._basis


def buchberger(generators):
    """Buchberger's algorithm

    Args:
        generators (list): Polynomials of one ring.

    Returns:
        list:
            The reduced Gröbner basis of the generated ideal, monic and sorted descending by
            leading monomial.

    """
    polys = [gen for gen in generators if gen]
    if not polys:
        return []
    ring = polys[0].ring
    deadline = budget_deadline()
    basis, leads, pairs = [], [], set()

    def add(poly):
        idx = len(basis)
        basis.append(poly)
        leads.append(poly.terms[0][0])
        pairs.update((other, idx) for other in range(idx))

    for poly in interreduce(polys):
        if poly.is_constant():
            return [ring.one()]
        add(poly)

    key = ring.order.key
    while pairs:
        check_budget(deadline)
        pair = min(pairs, key=lambda p: _pair_key(leads, key, p))
        pairs.remove(pair)
        left, right = pair
        if monomial_coprime(leads[left], leads[right]):
            continue
        lcm = monomial_lcm(leads[left], leads[right])
        if _chain_criterion(left, right, lcm, leads, pairs):
            continue
        rem = normal_form(s_polynomial(basis[left], basis[right]), basis)
        if rem:
            if rem.is_constant():
                return [ring.one()]
            add(rem.monic())
    return _auto_reduce(basis)


def interreduce(polys):
    """Autoreduce a list of polynomials

    Zeros and scalar duplicates are dropped and every polynomial is replaced by its normal form
    modulo the others until nothing changes. The result generates the same ideal.

    Args:
        polys (list): Polynomials of one ring.

    Returns:
        list:
            Monic, pairwise irreducible polynomials.

    """
    current = []
    for poly in polys:
        poly = poly.monic()
        if poly and poly not in current:
            current.append(poly)
    changed = True
    while changed:
        changed = False
        for idx, poly in enumerate(current):
            others = current[:idx] + current[idx + 1:]
            rem = normal_form(poly, others)
            if rem != poly:
                current = others + ([rem.monic()] if rem else [])
                changed = True
                break
    return current


def is_groebner(elements):
    """Buchberger certificate: every S-polynomial reduces to zero"""
    elements = [gen for gen in elements if gen]
    for left in range(len(elements)):
        for right in range(left + 1, len(elements)):
            if normal_form(s_polynomial(elements[left], elements[right]), elements):
                return False
    return True


def is_reduced(elements):
    """Whether a list of polynomials is monic and no leading monomial divides a term of another"""
    for idx, gen in enumerate(elements):
        if gen.leading_coefficient != 1:
            return False
        for other_idx, other in enumerate(elements):
            if idx != other_idx and any(monomial_divides(gen.leading_monomial, mon)
                                        for mon in other.monomials()):
                return False
    return True


def initial_ideal(basis):
    """Minimal monomial generators of the initial ideal

    Args:
        basis (GroebnerBasis): A reduced Gröbner basis.

    Returns:
        list:
            Leading monomials (exponent tuples) of the basis.

    """
    return [gen.leading_monomial for gen in basis.elements]


def _auto_reduce(basis):
    leads = [gen.terms[0][0] for gen in basis]
    minimal = []
    for idx, lead in enumerate(leads):
        redundant = any(monomial_divides(other, lead) and (other != lead or other_idx < idx)
                        for other_idx, other in enumerate(leads) if other_idx != idx)
        if not redundant:
            minimal.append(basis[idx])
    reduced = []
    for idx, gen in enumerate(minimal):
        reduced.append(normal_form(gen, minimal[:idx] + minimal[idx + 1:]).monic())
    key = reduced[0].ring.order.key if reduced else None
    return sorted(reduced, key=lambda gen: key(gen.terms[0][0]), reverse=True)


def _pair_key(leads, key, pair):
    lcm = monomial_lcm(leads[pair[0]], leads[pair[1]])
    return sum(lcm), key(lcm), pair


def _chain_criterion(left, right, lcm, leads, pairs):
    for other, lead in enumerate(leads):
        if other in (left, right) or not monomial_divides(lead, lcm):
            continue
        if (min(left, other), max(left, other)) not in pairs and \
                (min(right, other), max(right, other)) not in pairs:
            return True
    return False


def budget_deadline():
    """Deadline (monotonic clock) of a basis computation started now, None without budget"""
    budget = _BUDGET_MS.get()
    if budget is None:
        return None
    return time.monotonic() + budget / 1000


def check_budget(deadline):
    """Raise GroebnerTimeout once the deadline has passed"""
    if deadline is not None and time.monotonic() > deadline:
        raise GroebnerTimeout("Gröbner basis computation exceeded its time budget")
