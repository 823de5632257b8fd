"""Polynomial rings

Coefficient fields (exact rationals and prime fields), monomials, monomial orders and sparse
multivariate polynomials. Everything in this module is immutable after construction, so rings and
polynomials may be shared freely between computations.

A monomial is a plain tuple of non-negative exponents, one per ring variable. A polynomial stores
its terms as a tuple of (monomial, coefficient) pairs, strictly descending in the monomial order of
its ring, without zero coefficients. The zero polynomial has no terms.

"""
import enum
import re
from fractions import Fraction

from sympy import isprime

from fitdim_utils.exceptions import ParseError, StructuralError

DEFAULT_MODULUS = 32003
EXPONENT_LIMIT = 2**63 - 1

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[+\-−*^]))")


class CoefficientField:
    """Coefficient field of a polynomial ring

    Either the rationals (characteristic 0, elements are :class:`fractions.Fraction`) or a prime
    field (elements are the integers 0, ..., p-1).

    Args:
        characteristic (int): 0 for the rationals, a prime p for the prime field with p elements.

    Attributes:
        characteristic (int): 0 or a prime.

    """
    RATIONALS = "Rationals"
    PRIME_FIELD = "PrimeField"

    def __init__(self, characteristic=0):
        characteristic = int(characteristic)
        if characteristic != 0 and not isprime(characteristic):
            raise StructuralError(f"Characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @classmethod
    def rationals(cls):
        """The field of rational numbers"""
        return cls(0)

    @classmethod
    def prime_field(cls, modulus=DEFAULT_MODULUS):
        """The prime field with `modulus` elements"""
        modulus = int(modulus)
        if modulus < 2 or not isprime(modulus):
            raise StructuralError(f"Modulus of a prime field must be a prime, got {modulus}")
        return cls(modulus)

    @classmethod
    def from_string(cls, text):
        """Create a field from its name

        Args:
            text (str): Either 'QQ' or 'Fp(<prime>)'.

        Returns:
            CoefficientField:
                The field of the given name.

        """
        text = text.strip()
        if text == "QQ":
            return cls.rationals()
        match = re.fullmatch(r"Fp\((\d+)\)", text)
        if match is None:
            raise StructuralError(f"Unknown coefficient field '{text}'")
        return cls.prime_field(int(match.group(1)))

    @property
    def kind(self):
        """str: Either 'Rationals' or 'PrimeField'."""
        return self.RATIONALS if self.characteristic == 0 else self.PRIME_FIELD

    @property
    def name(self):
        """str: Name of the field as used in complex documents."""
        return "QQ" if self.characteristic == 0 else f"Fp({self.characteristic})"

    def convert(self, value):
        """Convert an integer, a fraction or a numeric string to a field element"""
        if isinstance(value, str):
            value = Fraction(value)
        if self.characteristic == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.characteristic == 0:
                raise ZeroDivisionError(f"{value} is not defined in {self.name}")
            return value.numerator * pow(value.denominator, -1, self.characteristic) \
                % self.characteristic
        return int(value) % self.characteristic

    def add(self, left, right):
        if self.characteristic:
            return (left + right) % self.characteristic
        return left + right

    def sub(self, left, right):
        if self.characteristic:
            return (left - right) % self.characteristic
        return left - right

    def mul(self, left, right):
        if self.characteristic:
            return left * right % self.characteristic
        return left * right

    def neg(self, value):
        if self.characteristic:
            return -value % self.characteristic
        return -value

    def inv(self, value):
        """Multiplicative inverse of a nonzero field element"""
        if value == 0:
            raise ZeroDivisionError("Zero has no inverse")
        if self.characteristic:
            return pow(value, -1, self.characteristic)
        return 1 / Fraction(value)

    def div(self, left, right):
        return self.mul(left, self.inv(right))

    def symmetric(self, value):
        """Representative used for printing: prime field elements are shifted to (-p/2, p/2]"""
        if self.characteristic and value > self.characteristic // 2:
            return value - self.characteristic
        return value

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and \
            self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("field", self.characteristic))

    def __repr__(self):
        return self.name


class Ordering(enum.IntEnum):
    """Result of a monomial comparison"""
    LT = -1
    EQ = 0
    GT = 1


class MonomialOrder:
    """Monomial order

    Lexicographic or graded reverse lexicographic order. Variables take precedence in the order in
    which they are declared, i.e. the first variable is the largest.

    Args:
        kind (str): Either 'lex' or 'grevlex'.

    """
    LEX = "lex"
    GREVLEX = "grevlex"

    def __init__(self, kind=GREVLEX):
        if kind not in (self.LEX, self.GREVLEX):
            raise StructuralError(f"Unknown monomial order '{kind}'")
        self.kind = kind
        self.key = _lex_key if kind == self.LEX else _grevlex_key

    def compare(self, mon1, mon2):
        """Compare two monomials

        Args:
            mon1 (tuple): Exponent vector.
            mon2 (tuple): Exponent vector of the same length.

        Returns:
            Ordering:
                LT, EQ or GT.

        """
        if len(mon1) != len(mon2):
            raise StructuralError("Monomials of different arity can not be compared")
        key1, key2 = self.key(mon1), self.key(mon2)
        if key1 == key2:
            return Ordering.EQ
        return Ordering.GT if key1 > key2 else Ordering.LT

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(("order", self.kind))

    def __repr__(self):
        return self.kind


def _lex_key(mon):
    return mon


def _grevlex_key(mon):
    return sum(mon), tuple(-exp for exp in reversed(mon))


def monomial_mul(mon1, mon2):
    """Product of two monomials; exponent overflow is an error"""
    product = tuple(a + b for a, b in zip(mon1, mon2))
    if product and max(product) > EXPONENT_LIMIT:
        raise OverflowError("Exponent overflow in monomial product")
    return product


def monomial_div(mon1, mon2):
    """Quotient mon1/mon2, assuming that mon2 divides mon1"""
    return tuple(a - b for a, b in zip(mon1, mon2))


def monomial_divides(mon1, mon2):
    """Whether mon1 divides mon2"""
    return all(a <= b for a, b in zip(mon1, mon2))


def monomial_lcm(mon1, mon2):
    return tuple(max(a, b) for a, b in zip(mon1, mon2))


def monomial_coprime(mon1, mon2):
    return all(a == 0 or b == 0 for a, b in zip(mon1, mon2))


def monomial_compare(order, mon1, mon2):
    """Compare two monomials in the given order (see :meth:`MonomialOrder.compare`)"""
    return order.compare(mon1, mon2)


class PolyRing:
    """Polynomial ring k[x_1, ..., x_v]

    Args:
        field (CoefficientField): Coefficient field.
        variables (list): Variable names, distinct and nonempty.
        order (MonomialOrder or str): Monomial order. Defaults to grevlex.

    Attributes:
        field (CoefficientField): Coefficient field.
        variables (tuple): Variable names.
        order (MonomialOrder): Monomial order.
        nvars (int): Number of variables, which is the Krull dimension of the ring.

    """
    def __init__(self, field, variables, order=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise StructuralError("Variable names must be distinct")
        for name in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise StructuralError(f"Invalid variable name '{name}'")
        if isinstance(order, str) or order is None:
            order = MonomialOrder(order or MonomialOrder.GREVLEX)
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self._index = {name: idx for idx, name in enumerate(variables)}

    def with_order(self, order):
        """Same field and variables, different monomial order"""
        return PolyRing(self.field, self.variables, order)

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.constant(1)

    def constant(self, value):
        value = self.field.convert(value)
        if value == 0:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, value),))

    def variable(self, name):
        """The variable of the given name (or index) as a polynomial"""
        idx = self._index[name] if isinstance(name, str) else int(name)
        exps = tuple(1 if i == idx else 0 for i in range(self.nvars))
        return Polynomial(self, ((exps, self.field.convert(1)),))

    def gens(self):
        """All variables as polynomials"""
        return [self.variable(idx) for idx in range(self.nvars)]

    def monomial(self, exps, coeff=1):
        """The term coeff * x^exps"""
        exps = tuple(int(exp) for exp in exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise StructuralError(f"Invalid exponent vector {exps} for {self}")
        return self.from_terms([(exps, coeff)])

    def from_terms(self, terms):
        """Create a polynomial in canonical form

        Coefficients of equal monomials are added, zero coefficients dropped and the terms sorted
        descending in the ring's order.

        Args:
            terms (iterable): (exponent tuple, coefficient) pairs.

        Returns:
            Polynomial:
                The polynomial in canonical form.

        """
        field = self.field
        collected = {}
        for exps, coeff in terms:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise StructuralError(f"Exponent vector {exps} does not fit {self}")
            coeff = field.convert(coeff)
            if exps in collected:
                collected[exps] = field.add(collected[exps], coeff)
            else:
                collected[exps] = coeff
        return self._from_dict(collected)

    def _from_dict(self, collected):
        key = self.order.key
        terms = sorted(((m, c) for m, c in collected.items() if c != 0),
                       key=lambda term: key(term[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    def parse(self, text, line=None, column=1):
        """Parse a polynomial string

        The syntax is documented in :mod:`fitdim_utils.cli`. Terms look like `-3*x^2*y`, where '*'
        and '^1' may be omitted.

        Args:
            text (str): Polynomial string.
            line (int): Line number used in error messages.
            column (int): Column of the first character of `text`, used in error messages.

        Returns:
            Polynomial:
                The parsed polynomial.

        """
        return _Parser(self, text, line, column).parse()

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and \
            self.variables == other.variables and self.order == other.order

    def __hash__(self):
        return hash((self.field, self.variables, self.order))

    def __str__(self):
        return f"{self.field.name}[{','.join(self.variables)}] order {self.order.kind}"

    def __repr__(self):
        return f"PolyRing({self})"


class Polynomial:
    """Sparse multivariate polynomial

    Instances are created through :class:`PolyRing` (`from_terms`, `parse`, `variable`, ...) and
    through arithmetic. Integers and fractions are accepted as operands of +, - and *.

    Attributes:
        ring (PolyRing): The ring the polynomial belongs to.
        terms (tuple): (monomial, coefficient) pairs, strictly descending in the ring's order.

    """
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def leading_term(self):
        """Greatest term in the ring's order

        Returns:
            tuple:
                (monomial, coefficient).

        """
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    @property
    def leading_monomial(self):
        return self.leading_term()[0]

    @property
    def leading_coefficient(self):
        return self.leading_term()[1]

    def total_degree(self):
        """Largest total degree of a term, -1 for the zero polynomial"""
        return max((sum(mon) for mon, _ in self.terms), default=-1)

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(self.terms[0][0]))

    def constant_term(self):
        for mon, coeff in self.terms:
            if not any(mon):
                return coeff
        return self.ring.field.convert(0)

    def is_homogeneous(self):
        """Whether all terms have the same total degree (the zero polynomial is homogeneous)"""
        return len({sum(mon) for mon, _ in self.terms}) <= 1

    def monomials(self):
        return [mon for mon, _ in self.terms]

    def normalize(self):
        """Rebuild the canonical form from the terms"""
        return self.ring.from_terms(self.terms)

    def reorder(self, ring):
        """The same polynomial in a ring that differs at most in its monomial order"""
        if ring.field != self.ring.field or ring.variables != self.ring.variables:
            raise StructuralError("Polynomial can only be moved to a ring with another order")
        return ring.from_terms(self.terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise StructuralError(f"Ring mismatch: {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        field = self.ring.field
        collected = dict(self.terms)
        for mon, coeff in other.terms:
            if mon in collected:
                collected[mon] = field.add(collected[mon], coeff)
            else:
                collected[mon] = coeff
        return self.ring._from_dict(collected)

    __radd__ = __add__

    def __neg__(self):
        field = self.ring.field
        return Polynomial(self.ring, tuple((mon, field.neg(coeff)) for mon, coeff in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return self.ring.zero()
        if len(other.terms) == 1:
            return self.mul_term(*other.terms[0])
        if len(self.terms) == 1:
            return other.mul_term(*self.terms[0])
        field = self.ring.field
        collected = {}
        for mon1, coeff1 in self.terms:
            for mon2, coeff2 in other.terms:
                mon = monomial_mul(mon1, mon2)
                coeff = field.mul(coeff1, coeff2)
                if mon in collected:
                    collected[mon] = field.add(collected[mon], coeff)
                else:
                    collected[mon] = coeff
        return self.ring._from_dict(collected)

    __rmul__ = __mul__

    def scale(self, scalar):
        """Multiply by a field element"""
        field = self.ring.field
        scalar = field.convert(scalar)
        if scalar == 0:
            return self.ring.zero()
        return Polynomial(self.ring, tuple((mon, field.mul(coeff, scalar))
                                           for mon, coeff in self.terms))

    def mul_term(self, mon, coeff):
        """Multiply by the term coeff * x^mon

        Monomial orders are multiplicative, hence the result is already sorted.

        """
        field = self.ring.field
        if coeff == 0:
            return self.ring.zero()
        return Polynomial(self.ring, tuple((monomial_mul(m, mon), field.mul(c, coeff))
                                           for m, c in self.terms))

    def monic(self):
        """Scale so that the leading coefficient is 1 (the zero polynomial stays zero)"""
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.terms[0][1]))

    def divide(self, divisor):
        """Division with remainder by a single nonzero polynomial

        Args:
            divisor (Polynomial): Nonzero divisor.

        Returns:
            (Polynomial, Polynomial):
                Quotient and remainder. The remainder is zero iff `divisor` divides `self`.

        """
        divisor = self._coerce(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("Division by the zero polynomial")
        field = self.ring.field
        key = self.ring.order.key
        lead_mon, lead_coeff = divisor.terms[0]
        lead_inv = field.inv(lead_coeff)
        rest = dict(self.terms)
        quotient, remainder = {}, {}
        while rest:
            mon = max(rest, key=key)
            coeff = rest.pop(mon)
            if not monomial_divides(lead_mon, mon):
                remainder[mon] = coeff
                continue
            q_mon = monomial_div(mon, lead_mon)
            q_coeff = field.mul(coeff, lead_inv)
            quotient[q_mon] = q_coeff
            for d_mon, d_coeff in divisor.terms[1:]:
                t_mon = monomial_mul(d_mon, q_mon)
                value = field.sub(rest.get(t_mon, 0), field.mul(d_coeff, q_coeff))
                if value == 0:
                    rest.pop(t_mon, None)
                else:
                    rest[t_mon] = value
        return self.ring._from_dict(quotient), self.ring._from_dict(remainder)

    def exact_divide(self, divisor):
        """Quotient of an exact division; raises ValueError if `divisor` does not divide"""
        quotient, remainder = self.divide(divisor)
        if remainder:
            raise ValueError(f"{divisor} does not divide {self}")
        return quotient

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self.terms))

    def to_string(self):
        """Render in the document syntax, e.g. 'x^2*y - 3*z'"""
        if not self.terms:
            return "0"
        field = self.ring.field
        pieces = []
        for mon, coeff in self.terms:
            coeff = field.symmetric(coeff)
            negative = coeff < 0
            coeff = -coeff if negative else coeff
            factors = []
            for name, exp in zip(self.ring.variables, mon):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            if coeff != 1 or not factors:
                factors.insert(0, str(coeff))
            term = "*".join(factors)
            if not pieces:
                pieces.append("-" + term if negative else term)
            else:
                pieces.append(("- " if negative else "+ ") + term)
        return " ".join(pieces)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"


def leading_term(poly):
    """Leading (monomial, coefficient) of a nonzero polynomial"""
    return poly.leading_term()


def poly_arith(operation, left, right):
    """Exact polynomial arithmetic

    Args:
        operation (str): One of 'add', 'mul' or 'scale'.
        left (Polynomial): First operand.
        right (Polynomial or int or ~fractions.Fraction): Second operand; a scalar for 'scale'.

    Returns:
        Polynomial:
            Result in canonical form.

    """
    if operation == "add":
        return left + right
    if operation == "mul":
        return left * right
    if operation == "scale":
        return left.scale(right)
    raise ValueError(f"Unknown operation '{operation}'")


class _Parser:
    """Recursive descent parser for polynomial strings"""

    def __init__(self, ring, text, line, column):
        self.ring = ring
        self.text = text
        self.line = line
        self.column = column
        self.tokens = self._tokenize()
        self.pos = 0

    def _tokenize(self):
        tokens = []
        idx = 0
        text = self.text
        while idx < len(text):
            if text[idx].isspace():
                idx += 1
                continue
            match = _TOKEN.match(text, idx)
            if match is None:
                self._fail(f"Unexpected character '{text[idx]}'", idx)
            kind = match.lastgroup
            value = match.group(kind)
            start = match.start(kind)
            if kind == "op" and value == "−":
                value = "-"
            tokens.append((kind, value, start))
            idx = match.end()
        return tokens

    def _fail(self, message, idx):
        raise ParseError(message, self.line, self.column + idx)

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None, None, len(self.text)

    def _next(self):
        token = self._peek()
        self.pos += 1
        return token

    def parse(self):
        if not self.tokens:
            self._fail("Empty polynomial", 0)
        field = self.ring.field
        terms = []
        sign = 1
        kind, value, _ = self._peek()
        if kind == "op" and value in "+-":
            self._next()
            sign = -1 if value == "-" else 1
        while True:
            mon, coeff = self._term()
            terms.append((mon, field.mul(coeff, field.convert(sign))))
            kind, value, idx = self._peek()
            if kind is None:
                break
            if kind != "op" or value not in "+-":
                self._fail(f"Expected '+' or '-', got '{value}'", idx)
            self._next()
            sign = -1 if value == "-" else 1
        return self.ring.from_terms(terms)

    def _term(self):
        field = self.ring.field
        coeff = field.convert(1)
        exps = [0] * self.ring.nvars
        factors = 0
        while True:
            kind, value, idx = self._peek()
            if factors and kind == "op" and value == "*":
                self._next()
                kind, value, idx = self._peek()
                if kind not in ("num", "var"):
                    self._fail("Expected a factor after '*'", idx)
            if kind == "num":
                self._next()
                try:
                    coeff = field.mul(coeff, field.convert(Fraction(value)))
                except ZeroDivisionError as err:
                    self._fail(f"Coefficient {value} is not defined in {field.name}: {err}", idx)
            elif kind == "var":
                self._next()
                if value not in self.ring.variables:
                    self._fail(f"Unknown variable '{value}'", idx)
                exp = 1
                n_kind, n_value, _ = self._peek()
                if n_kind == "op" and n_value == "^":
                    self._next()
                    e_kind, e_value, e_idx = self._next()
                    if e_kind != "num" or "/" in e_value:
                        self._fail("Expected a non-negative integer exponent", e_idx)
                    exp = int(e_value)
                exps[self.ring.variables.index(value)] += exp
                if exps[self.ring.variables.index(value)] > EXPONENT_LIMIT:
                    self._fail(f"Exponent of {value} exceeds {EXPONENT_LIMIT}", idx)
            else:
                if not factors:
                    self._fail("Expected a coefficient or a variable", idx)
                break
            factors += 1
        return tuple(exps), coeff
