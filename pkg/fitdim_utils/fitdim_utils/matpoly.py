"""Matrices over polynomial rings

Maps between finite free modules, exact determinants, generic ranks and the ideals of minors
I_s(phi). The boundary conventions for minors are:

* for s <= 0 every s x s minor is 1, hence I_s is the unit ideal;
* the determinant and all minors of the empty (0 x 0) matrix are 1;
* for s >= 1 the ideal I_s of any other matrix is zero if s exceeds the number of rows or columns.
  A matrix with zero columns but some rows (the map 0 -> R^n) has no s x s minors for s >= 1.

"""
import itertools
import logging

from fitdim_utils.exceptions import StructuralError
from fitdim_utils.groebner import IdealHandle

logger = logging.getLogger(__name__)


class MapOfFree:
    """Map R^source_rank -> R^target_rank given by a matrix

    Entry (i, j) is the coefficient of the image of source basis vector j on target basis
    vector i, so the matrix has target_rank rows and source_rank columns.

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        target_rank (int): Number of rows.
        source_rank (int): Number of columns.
        entries (list): target_rank rows of source_rank polynomials each.

    Attributes:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        target_rank (int): Number of rows.
        source_rank (int): Number of columns.
        entries (tuple): Rows of the matrix as tuples of polynomials.

    """
    def __init__(self, ring, target_rank, source_rank, entries):
        entries = tuple(tuple(row) for row in entries)
        if target_rank < 0 or source_rank < 0:
            raise StructuralError("Ranks must be non-negative")
        if len(entries) != target_rank or any(len(row) != source_rank for row in entries):
            raise StructuralError(f"Entry grid does not have shape {target_rank}x{source_rank}")
        for row in entries:
            for entry in row:
                if entry.ring != ring:
                    raise StructuralError(f"Entry {entry} is not an element of {ring}")
        self.ring = ring
        self.target_rank = target_rank
        self.source_rank = source_rank
        self.entries = entries

    @classmethod
    def from_rows(cls, ring, rows, source_rank=None):
        """Create a map from rows of polynomials, integers or polynomial strings

        Args:
            ring (~fitdim_utils.polyring.PolyRing): The ring.
            rows (list): Rows of the matrix.
            source_rank (int): Number of columns; only needed when there are no rows.

        Returns:
            MapOfFree:
                The map.

        """
        converted = [[_to_poly(ring, entry) for entry in row] for row in rows]
        if source_rank is None:
            source_rank = len(converted[0]) if converted else 0
        return cls(ring, len(converted), source_rank, converted)

    @classmethod
    def zero(cls, ring, target_rank, source_rank):
        return cls(ring, target_rank, source_rank,
                   [[ring.zero()] * source_rank for _ in range(target_rank)])

    @classmethod
    def identity(cls, ring, rank):
        return cls(ring, rank, rank, [[ring.one() if i == j else ring.zero()
                                       for j in range(rank)] for i in range(rank)])

    @property
    def shape(self):
        """tuple: (target_rank, source_rank)."""
        return self.target_rank, self.source_rank

    def is_empty(self):
        """Whether this is the 0 x 0 matrix of the map 0 -> 0"""
        return self.target_rank == 0 and self.source_rank == 0

    def entry(self, row, column):
        return self.entries[row][column]

    def column(self, column):
        return tuple(row[column] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.source_rank)]

    def transpose(self):
        return MapOfFree(self.ring, self.source_rank, self.target_rank,
                         [self.column(j) for j in range(self.source_rank)])

    def compose(self, other):
        """Matrix product self * other, i.e. the map 'self after other'"""
        if other.ring != self.ring:
            raise StructuralError(f"Ring mismatch: {self.ring} and {other.ring}")
        if other.target_rank != self.source_rank:
            raise StructuralError(f"Can not compose {self.shape} after {other.shape}")
        zero = self.ring.zero()
        rows = []
        for row in self.entries:
            new_row = []
            for j in range(other.source_rank):
                total = zero
                for k, entry in enumerate(row):
                    if entry and other.entries[k][j]:
                        total = total + entry * other.entries[k][j]
                new_row.append(total)
            rows.append(new_row)
        return MapOfFree(self.ring, self.target_rank, other.source_rank, rows)

    __matmul__ = compose

    def scale(self, scalar):
        return MapOfFree(self.ring, self.target_rank, self.source_rank,
                         [[entry * scalar for entry in row] for row in self.entries])

    def __neg__(self):
        return self.scale(-1)

    def first_nonzero(self):
        """Position (row, column) of the first nonzero entry, None for the zero matrix"""
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry:
                    return i, j
        return None

    def is_zero(self):
        return self.first_nonzero() is None

    def is_minimal(self):
        """Whether no entry has a nonzero constant term"""
        return all(entry.constant_term() == 0 for row in self.entries for entry in row)

    def max_degree(self):
        return max((entry.total_degree() for row in self.entries for entry in row), default=-1)

    def permute(self, row_order, column_order):
        """Reorder rows and columns; row i of the result is row row_order[i] of self"""
        if sorted(row_order) != list(range(self.target_rank)) or \
                sorted(column_order) != list(range(self.source_rank)):
            raise StructuralError("Orders must be permutations of the rows and columns")
        return MapOfFree(self.ring, self.target_rank, self.source_rank,
                         [[self.entries[i][j] for j in column_order] for i in row_order])

    def __eq__(self, other):
        return isinstance(other, MapOfFree) and self.ring == other.ring and \
            self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.ring, self.shape, self.entries))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"MapOfFree({self.target_rank}x{self.source_rank}: {rows})"


def block_diagonal(ring, maps):
    """Block diagonal map of the direct sum of maps"""
    target = sum(m.target_rank for m in maps)
    source = sum(m.source_rank for m in maps)
    rows = [[ring.zero()] * source for _ in range(target)]
    row_offset = col_offset = 0
    for block in maps:
        for i, row in enumerate(block.entries):
            for j, entry in enumerate(row):
                rows[row_offset + i][col_offset + j] = entry
        row_offset += block.target_rank
        col_offset += block.source_rank
    return MapOfFree(ring, target, source, rows)


class MinorCache:
    """Memoized Laplace expansion of minors

    Minors are expanded along their last row; the sub-minors are cached by (rows, columns), so
    enumerating all s x s minors of a matrix reuses the smaller minors.

    Args:
        matrix (MapOfFree): The matrix.

    """
    def __init__(self, matrix):
        self.matrix = matrix
        self._memo = {}

    def minor(self, rows, columns):
        """Determinant of the submatrix on the given (sorted) row and column indices"""
        rows, columns = tuple(rows), tuple(columns)
        if len(rows) != len(columns):
            raise StructuralError("A minor needs as many rows as columns")
        if not rows:
            return self.matrix.ring.one()
        key = (rows, columns)
        if key in self._memo:
            return self._memo[key]
        last = self.matrix.entries[rows[-1]]
        sub_rows = rows[:-1]
        parity = len(rows) - 1
        total = self.matrix.ring.zero()
        for pos, column in enumerate(columns):
            entry = last[column]
            if not entry:
                continue
            sub = self.minor(sub_rows, columns[:pos] + columns[pos + 1:])
            if not sub:
                continue
            term = entry * sub
            total = total + term if (parity + pos) % 2 == 0 else total - term
        self._memo[key] = total
        return total


def determinant(matrix):
    """Exact determinant of a square matrix (1 for the 0 x 0 matrix)"""
    if matrix.target_rank != matrix.source_rank:
        raise StructuralError(f"Determinant of a non-square {matrix.shape} matrix")
    size = matrix.target_rank
    return MinorCache(matrix).minor(range(size), range(size))


def bareiss_determinant(matrix):
    """Determinant by fraction-free (Bareiss) elimination

    Every division in the elimination is exact, so it runs inside the polynomial ring.

    Args:
        matrix (MapOfFree): Square matrix.

    Returns:
        ~fitdim_utils.polyring.Polynomial:
            The determinant.

    """
    if matrix.target_rank != matrix.source_rank:
        raise StructuralError(f"Determinant of a non-square {matrix.shape} matrix")
    ring = matrix.ring
    size = matrix.target_rank
    if size == 0:
        return ring.one()
    rows = [list(row) for row in matrix.entries]
    negate = False
    previous = ring.one()
    for k in range(size - 1):
        if not rows[k][k]:
            for i in range(k + 1, size):
                if rows[i][k]:
                    rows[i], rows[k] = rows[k], rows[i]
                    negate = not negate
                    break
            else:
                return ring.zero()
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                value = rows[k][k] * rows[i][j] - rows[i][k] * rows[k][j]
                rows[i][j] = value.exact_divide(previous)
        previous = rows[k][k]
    det = rows[size - 1][size - 1]
    return -det if negate else det


def minors(matrix, size):
    """All size x size minors, row subsets outer and column subsets inner, lexicographically"""
    cache = MinorCache(matrix)
    return [cache.minor(rows, columns)
            for rows in itertools.combinations(range(matrix.target_rank), size)
            for columns in itertools.combinations(range(matrix.source_rank), size)]


def minor_ideal(matrix, size):
    """Ideal I_s of the size x size minors

    Args:
        matrix (MapOfFree): The matrix.
        size (int): Minor size s (any integer).

    Returns:
        ~fitdim_utils.groebner.IdealHandle:
            The unit ideal for s <= 0 or the 0 x 0 matrix, the zero ideal if s exceeds the number
            of rows or columns, else the ideal of the minors (zero-pruned, scalar duplicates
            removed).

    """
    ring = matrix.ring
    if size <= 0 or matrix.is_empty():
        return IdealHandle.unit(ring)
    if size > min(matrix.target_rank, matrix.source_rank):
        return IdealHandle.zero(ring)
    generators = []
    for minor in minors(matrix, size):
        if minor:
            minor = minor.monic()
            if minor not in generators:
                generators.append(minor)
    logger.debug("I_%d of a %dx%d matrix has %d generators", size, matrix.target_rank,
                 matrix.source_rank, len(generators))
    return IdealHandle(ring, generators)


def generic_rank(matrix):
    """Rank over the fraction field of the ring

    Computed by fraction-free elimination with full pivoting; equals the largest s with
    I_s(matrix) != 0.

    Args:
        matrix (MapOfFree): The matrix.

    Returns:
        int:
            The rank.

    """
    ring = matrix.ring
    rows = [list(row) for row in matrix.entries]
    n_rows, n_cols = matrix.target_rank, matrix.source_rank
    previous = ring.one()
    rank = 0
    while rank < min(n_rows, n_cols):
        pivot = next(((i, j) for i in range(rank, n_rows) for j in range(rank, n_cols)
                      if rows[i][j]), None)
        if pivot is None:
            break
        i, j = pivot
        rows[i], rows[rank] = rows[rank], rows[i]
        for row in rows:
            row[j], row[rank] = row[rank], row[j]
        for i in range(rank + 1, n_rows):
            for j in range(rank + 1, n_cols):
                value = rows[rank][rank] * rows[i][j] - rows[i][rank] * rows[rank][j]
                rows[i][j] = value.exact_divide(previous)
        previous = rows[rank][rank]
        rank += 1
    return rank


def _to_poly(ring, entry):
    if isinstance(entry, str):
        return ring.parse(entry)
    if isinstance(entry, int):
        return ring.constant(entry)
    return entry
