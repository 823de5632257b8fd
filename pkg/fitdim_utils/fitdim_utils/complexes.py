"""Finite free complexes

A finite free complex

    F: 0 -> F_b -> F_{b-1} -> ... -> F_a -> 0

is stored as its degree range [a, b], the ranks f_n of the free modules F_n and the matrices of the
differentials d_n: F_n -> F_{n-1} for n in [a+1, b]. Outside [a, b] the modules are zero, and
:meth:`FiniteFreeComplex.differential` returns the zero map of the right shape for every degree, so
d_{b+1} is the map 0 -> F_b and d_n for n > b+1 is the map 0 -> 0.

The module also holds the constructions used to produce complexes: Koszul complexes, shifts,
direct sums, duals and elementary changes of basis.

"""
import collections
import itertools
import logging

from fitdim_utils.exceptions import ComplexError, StructuralError
from fitdim_utils.matpoly import MapOfFree, block_diagonal

logger = logging.getLogger(__name__)


class FiniteFreeComplex:
    """Bounded complex of finite free modules

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        low (int): Lowest degree a.
        high (int): Highest degree b. high = low - 1 gives the empty complex.
        ranks (list): Ranks f_a, ..., f_b.
        differentials (dict or list): Map n -> :class:`~fitdim_utils.matpoly.MapOfFree` for
            n in [a+1, b]; a list is read as the differentials d_{a+1}, ..., d_b.
        name (str): Optional name of the complex.

    Attributes:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        low (int): Lowest degree a.
        high (int): Highest degree b.
        ranks (tuple): Ranks f_a, ..., f_b.
        name (str): Name of the complex or None.

    """
    def __init__(self, ring, low, high, ranks, differentials=None, name=None):
        ranks = tuple(int(rank) for rank in ranks)
        if high < low - 1:
            raise StructuralError(f"Invalid degree range {low}..{high}")
        if len(ranks) != high - low + 1:
            raise StructuralError(f"Expected {high - low + 1} ranks for degrees {low}..{high}, "
                                  f"got {len(ranks)}")
        if any(rank < 0 for rank in ranks):
            raise StructuralError("Ranks must be non-negative")
        if differentials is None:
            differentials = {}
        elif not isinstance(differentials, dict):
            differentials = {low + 1 + idx: diff for idx, diff in enumerate(differentials)}
        self.ring = ring
        self.low = low
        self.high = high
        self.ranks = ranks
        self.name = name
        self._differentials = {}
        for degree in range(low + 1, high + 1):
            diff = differentials.get(degree)
            if diff is None:
                diff = MapOfFree.zero(ring, self.rank(degree - 1), self.rank(degree))
            if diff.ring != ring:
                raise StructuralError(f"Differential in degree {degree} is not over {ring}")
            if diff.shape != (self.rank(degree - 1), self.rank(degree)):
                raise StructuralError(f"Differential in degree {degree} has shape {diff.shape}, "
                                      f"expected {(self.rank(degree - 1), self.rank(degree))}")
            self._differentials[degree] = diff
        extra = set(differentials) - set(self._differentials)
        if extra:
            raise StructuralError(f"Differentials given outside the degree range: {sorted(extra)}")
        self._validated = False

    @classmethod
    def empty(cls, ring):
        return cls(ring, 0, -1, [])

    @classmethod
    def single(cls, ring, rank=1, degree=0):
        """The complex with one free module R^rank in the given degree"""
        return cls(ring, degree, degree, [rank])

    def is_empty(self):
        return self.high < self.low

    def degrees(self):
        return range(self.low, self.high + 1)

    def rank(self, degree):
        """Rank f_n of F_n, 0 outside the degree range"""
        if self.low <= degree <= self.high:
            return self.ranks[degree - self.low]
        return 0

    def differential(self, degree):
        """Matrix of d_n: F_n -> F_{n-1} (rank(n-1) rows, rank(n) columns) for any integer n"""
        diff = self._differentials.get(degree)
        if diff is None:
            diff = MapOfFree.zero(self.ring, self.rank(degree - 1), self.rank(degree))
        return diff

    @property
    def differentials(self):
        """dict: The stored differentials d_n for n in [a+1, b]."""
        return dict(self._differentials)

    def __eq__(self, other):
        if not isinstance(other, FiniteFreeComplex):
            return NotImplemented
        return self.ring == other.ring and self.low == other.low and self.high == other.high \
            and self.ranks == other.ranks and self._differentials == other._differentials

    def __hash__(self):
        return hash((self.ring, self.low, self.high, self.ranks))

    def __repr__(self):
        return f"FiniteFreeComplex({self.low}..{self.high}, ranks={list(self.ranks)})"


class ValidationReport:
    """Outcome of :func:`validate_complex`

    Attributes:
        valid (bool): Whether every composition of consecutive differentials is zero.
        minimal (bool): Whether no differential entry has a nonzero constant term.
        non_minimal (list): (degree, row, column) of entries with a nonzero constant term.

    """
    def __init__(self, valid, non_minimal):
        self.valid = valid
        self.non_minimal = non_minimal
        self.minimal = not non_minimal

    def __repr__(self):
        return f"ValidationReport(valid={self.valid}, minimal={self.minimal})"


def validate_complex(complex_):
    """Check that the differentials compose to zero and report minimality

    Args:
        complex_ (FiniteFreeComplex): The complex.

    Returns:
        ValidationReport:
            The report.

    Raises:
        ~fitdim_utils.exceptions.ComplexError: If d_{n-1} d_n is nonzero; the error carries n
            and the position of the first nonzero entry of the product.

    """
    for degree in range(complex_.low + 2, complex_.high + 1):
        product = complex_.differential(degree - 1).compose(complex_.differential(degree))
        position = product.first_nonzero()
        if position is not None:
            row, column = position
            raise ComplexError(f"∂∂ ≠ 0 at degree {degree}, entry ({row}, {column})",
                               degree=degree, row=row, column=column)
    non_minimal = [(degree, row, column)
                   for degree, diff in sorted(complex_.differentials.items())
                   for row, entries in enumerate(diff.entries)
                   for column, entry in enumerate(entries) if entry.constant_term() != 0]
    complex_._validated = True
    return ValidationReport(True, non_minimal)


def require_valid(complex_):
    """Validate a complex once; later calls are free"""
    if not complex_._validated:
        validate_complex(complex_)


class RankProfile:
    """Alternating rank sums of a complex

    s_n = f_n - s_{n-1} with s_n = 0 for n < a, and the expected ranks r_n = f_n - r_{n+1} with
    r_n = 0 for n > b. Values for any integer are computed from the recurrences.

    Args:
        low (int): Lowest degree a.
        high (int): Highest degree b.
        ranks (tuple): Ranks f_a, ..., f_b.

    """
    def __init__(self, low, high, ranks):
        self.low = low
        self.high = high
        self._ranks = tuple(ranks)
        self._s = {}
        self._r = {}
        total = 0
        for degree in range(low, high + 1):
            total = self._f(degree) - total
            self._s[degree] = total
        total = 0
        for degree in range(high, low - 1, -1):
            total = self._f(degree) - total
            self._r[degree] = total

    def _f(self, degree):
        if self.low <= degree <= self.high:
            return self._ranks[degree - self.low]
        return 0

    def s(self, degree):
        """s_n for any integer n"""
        if degree < self.low or self.high < self.low:
            return 0
        if degree > self.high:
            return self._s[self.high] * (-1) ** (degree - self.high)
        return self._s[degree]

    def r(self, degree):
        """Expected rank r_n for any integer n"""
        if degree > self.high or self.high < self.low:
            return 0
        if degree < self.low:
            return self._r[self.low] * (-1) ** (self.low - degree)
        return self._r[degree]

    def s_table(self):
        """dict: s_n for n in [a-1, b+1]."""
        return {degree: self.s(degree) for degree in range(self.low - 1, self.high + 2)}

    def r_table(self):
        """dict: r_n for n in [a, b+1]."""
        return {degree: self.r(degree) for degree in range(self.low, self.high + 2)}


def alternating_sums(complex_):
    """RankProfile of a complex"""
    return RankProfile(complex_.low, complex_.high, complex_.ranks)


def dual_complex(complex_):
    """The dual complex Hom(F, R)

    G_n = F_{-n} in degrees [-b, -a] with differential d^G_n = transpose(d^F_{1-n}), without any
    sign.

    """
    if complex_.is_empty():
        return FiniteFreeComplex.empty(complex_.ring)
    differentials = {degree: complex_.differential(1 - degree).transpose()
                     for degree in range(-complex_.high + 1, -complex_.low + 1)}
    dual = FiniteFreeComplex(complex_.ring, -complex_.high, -complex_.low,
                             tuple(reversed(complex_.ranks)), differentials)
    dual._validated = complex_._validated
    return dual


def koszul_complex(ring, sequence):
    """Koszul complex on a sequence f_1, ..., f_c

    F_n has the basis e_S for the n-subsets S of {1, ..., c}, in lexicographic order of the sorted
    index lists, and d(e_S) = sum over the positions k of j in S of (-1)^k f_j e_{S - j}.

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        sequence (list): Polynomials (or polynomial strings) f_1, ..., f_c, c >= 1.

    Returns:
        FiniteFreeComplex:
            The complex in degrees [0, c].

    """
    sequence = [ring.parse(f) if isinstance(f, str) else f for f in sequence]
    if not sequence:
        raise StructuralError("The Koszul complex needs a nonempty sequence")
    length = len(sequence)
    subsets = [list(itertools.combinations(range(length), size)) for size in range(length + 1)]
    differentials = {}
    for degree in range(1, length + 1):
        index = {subset: idx for idx, subset in enumerate(subsets[degree - 1])}
        rows = [[ring.zero()] * len(subsets[degree]) for _ in subsets[degree - 1]]
        for column, subset in enumerate(subsets[degree]):
            for pos, j in enumerate(subset):
                face = subset[:pos] + subset[pos + 1:]
                entry = sequence[j] if pos % 2 == 0 else -sequence[j]
                rows[index[face]][column] = entry
        differentials[degree] = MapOfFree(ring, len(subsets[degree - 1]), len(subsets[degree]),
                                          rows)
    name = "koszul(" + ", ".join(str(f) for f in sequence) + ")"
    return FiniteFreeComplex(ring, 0, length, [len(s) for s in subsets], differentials, name=name)


def shift(complex_, steps):
    """Shifted complex with (S^k F)_n = F_{n-k} and differentials multiplied by (-1)^k"""
    if complex_.is_empty():
        return complex_
    sign = -1 if steps % 2 else 1
    differentials = {degree + steps: diff.scale(sign) if sign < 0 else diff
                     for degree, diff in complex_.differentials.items()}
    shifted = FiniteFreeComplex(complex_.ring, complex_.low + steps, complex_.high + steps,
                                complex_.ranks, differentials)
    shifted._validated = complex_._validated
    return shifted


def direct_sum(*complexes):
    """Degreewise direct sum with block-diagonal differentials"""
    parts = [c for c in complexes if not c.is_empty()]
    if not complexes:
        raise StructuralError("The direct sum needs at least one complex")
    ring = complexes[0].ring
    if any(c.ring != ring for c in complexes):
        raise StructuralError("All summands must be over the same ring")
    if not parts:
        return FiniteFreeComplex.empty(ring)
    low = min(c.low for c in parts)
    high = max(c.high for c in parts)
    ranks = [sum(c.rank(degree) for c in parts) for degree in range(low, high + 1)]
    differentials = {degree: block_diagonal(ring, [c.differential(degree) for c in parts])
                     for degree in range(low + 1, high + 1)}
    total = FiniteFreeComplex(ring, low, high, ranks, differentials)
    total._validated = all(c._validated for c in parts)
    return total


def shift_and_sum(operation, *args):
    """Dispatch 'shift' (complex, k) or 'direct_sum' (complex, complex, ...)"""
    if operation == "shift":
        complex_, steps = args
        return shift(complex_, steps)
    if operation == "direct_sum":
        return direct_sum(*args)
    raise ValueError(f"Unknown operation '{operation}'")


def change_basis(complex_, degree, row, column, multiplier):
    """Apply the elementary automorphism 1 + m E_{row,column} of F_degree

    The new complex is isomorphic to the old one: d_{degree+1} gets row `row` plus m times row
    `column`, and d_degree gets column `column` minus m times column `row`.

    Args:
        complex_ (FiniteFreeComplex): The complex.
        degree (int): Degree of the module whose basis changes.
        row (int): Index i of the elementary matrix.
        column (int): Index j of the elementary matrix, different from `row`.
        multiplier (~fitdim_utils.polyring.Polynomial): Polynomial m.

    Returns:
        FiniteFreeComplex:
            The isomorphic complex.

    """
    rank = complex_.rank(degree)
    if not 0 <= row < rank or not 0 <= column < rank or row == column:
        raise StructuralError(f"Invalid elementary operation ({row}, {column}) on F_{degree}")
    ring = complex_.ring
    forward = _elementary(ring, rank, row, column, multiplier)
    backward = _elementary(ring, rank, row, column, -multiplier)
    return _conjugate(complex_, degree, forward, backward)


def scale_basis(complex_, degree, index, unit):
    """Multiply basis vector `index` of F_degree by a nonzero scalar"""
    rank = complex_.rank(degree)
    if not 0 <= index < rank:
        raise StructuralError(f"Invalid basis index {index} of F_{degree}")
    ring = complex_.ring
    unit = ring.field.convert(unit)
    if unit == 0:
        raise StructuralError("Basis vectors can only be scaled by units")
    forward = _diagonal(ring, rank, index, unit)
    backward = _diagonal(ring, rank, index, ring.field.inv(unit))
    return _conjugate(complex_, degree, forward, backward)


def grading(complex_):
    """Twists that make every differential homogeneous of degree 0

    Every basis vector (n, i) of F_n gets an integer twist t(n, i) such that each nonzero entry
    (i, j) of d_n is homogeneous of degree t(n, j) - t(n-1, i). Twists are fixed up to a constant per
    connected component; each component starts at 0.

    Args:
        complex_ (FiniteFreeComplex): The complex.

    Returns:
        dict:
            Map (degree, index) -> twist, or None if the complex can not be graded.

    """
    edges = collections.defaultdict(list)
    for degree, diff in complex_.differentials.items():
        for row, entries in enumerate(diff.entries):
            for column, entry in enumerate(entries):
                if not entry:
                    continue
                if not entry.is_homogeneous():
                    return None
                weight = entry.total_degree()
                edges[(degree - 1, row)].append(((degree, column), weight))
                edges[(degree, column)].append(((degree - 1, row), -weight))
    twists = {}
    for degree in complex_.degrees():
        for idx in range(complex_.rank(degree)):
            if (degree, idx) in twists:
                continue
            twists[(degree, idx)] = 0
            queue = collections.deque([(degree, idx)])
            while queue:
                node = queue.popleft()
                for other, weight in edges[node]:
                    expected = twists[node] + weight
                    if other not in twists:
                        twists[other] = expected
                        queue.append(other)
                    elif twists[other] != expected:
                        return None
    return twists


def is_graded(complex_):
    """Whether the complex is homogeneous for some choice of twists"""
    return grading(complex_) is not None


def _conjugate(complex_, degree, forward, backward):
    if not complex_.low <= degree <= complex_.high:
        raise StructuralError(f"Degree {degree} outside {complex_.low}..{complex_.high}")
    differentials = complex_.differentials
    if degree + 1 in differentials:
        differentials[degree + 1] = forward.compose(differentials[degree + 1])
    if degree in differentials:
        differentials[degree] = differentials[degree].compose(backward)
    changed = FiniteFreeComplex(complex_.ring, complex_.low, complex_.high, complex_.ranks,
                                differentials, name=complex_.name)
    changed._validated = complex_._validated
    return changed


def _elementary(ring, rank, row, column, multiplier):
    rows = [[ring.one() if i == j else ring.zero() for j in range(rank)] for i in range(rank)]
    rows[row][column] = multiplier
    return MapOfFree(ring, rank, rank, rows)


def _diagonal(ring, rank, index, unit):
    rows = [[ring.one() if i == j else ring.zero() for j in range(rank)] for i in range(rank)]
    rows[index][index] = ring.constant(unit)
    return MapOfFree(ring, rank, rank, rows)
