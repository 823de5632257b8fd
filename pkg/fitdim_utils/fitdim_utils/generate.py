"""Random complexes

Valid complexes with nontrivial, non-minimal differentials are built from blocks whose homology is
known: shifted Koszul complexes, single free modules and split exact pieces R -> R. Blocks are
summed while the ranks stay small, and the sum is then disguised by random elementary changes of
basis. The homology of the result is that of the blocks, but the dimension checks treat the
complexes as black boxes.

All randomness comes from a :class:`numpy.random.Generator`, so a seed fixes the complex.

"""
import logging

import numpy as np

from fitdim_utils import complexes
from fitdim_utils.matpoly import MapOfFree
from fitdim_utils.polyring import CoefficientField, PolyRing

logger = logging.getLogger(__name__)

VARIABLE_NAMES = "xyzwuvst"
SEED_STRIDE = 1_000_003


def make_ring(nvars, field=None, order="grevlex"):
    """Polynomial ring with variables x, y, z, w, ... (x1, x2, ... beyond eight variables)"""
    if isinstance(field, str):
        field = CoefficientField.from_string(field)
    if field is None:
        field = CoefficientField.prime_field()
    if nvars <= len(VARIABLE_NAMES):
        names = list(VARIABLE_NAMES[:nvars])
    else:
        names = [f"x{idx + 1}" for idx in range(nvars)]
    return PolyRing(field, names, order)


def complex_seed(seed, index):
    """Seed of complex number `index` in a suite, independent of how the suite is split up"""
    return seed * SEED_STRIDE + index


def random_coefficient(ring, rng):
    """Nonzero field element; small integers over the rationals"""
    if ring.field.characteristic:
        return int(rng.integers(1, ring.field.characteristic))
    value = int(rng.integers(1, 6))
    return value if rng.random() < 0.5 else -value


def random_polynomial(ring, rng, maxdeg, max_terms=3, min_degree=1):
    """Random nonzero polynomial with terms of degree min_degree..maxdeg"""
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        degree = int(rng.integers(min_degree, max(maxdeg, min_degree) + 1))
        exps = [0] * ring.nvars
        for _ in range(degree):
            exps[int(rng.integers(0, ring.nvars))] += 1
        terms.append((tuple(exps), random_coefficient(ring, rng)))
    poly = ring.from_terms(terms)
    if not poly:
        return random_polynomial(ring, rng, maxdeg, max_terms, min_degree)
    return poly


def random_sequence(ring, rng, maxlen=3, maxdeg=2):
    """Random sequence of 1..maxlen polynomials for a Koszul complex"""
    length = int(rng.integers(1, maxlen + 1))
    return [random_polynomial(ring, rng, maxdeg) for _ in range(length)]


def koszul_block(ring, rng, maxdeg, length):
    sequence = random_sequence(ring, rng, min(3, max(length, 1)), maxdeg)
    return complexes.koszul_complex(ring, sequence)


def free_block(ring):
    return complexes.FiniteFreeComplex.single(ring, 1, 0)


def split_block(ring, rng):
    """R -> R given by a unit, exact"""
    unit = ring.constant(random_coefficient(ring, rng))
    diff = MapOfFree(ring, 1, 1, [[unit]])
    return complexes.FiniteFreeComplex(ring, 0, 1, [1, 1], [diff])


def random_complex(ring, rng, maxdeg=2, maxrank=3, length=4, blocks=3, basis_changes=4):
    """Random valid complex in degrees within [0, length]

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        rng (~numpy.random.Generator): Random generator.
        maxdeg (int): Largest total degree of a differential entry.
        maxrank (int): Largest rank of a module.
        length (int): Largest b - a.
        blocks (int): Largest number of blocks that are summed.
        basis_changes (int): Number of attempted elementary changes of basis.

    Returns:
        ~fitdim_utils.complexes.FiniteFreeComplex:
            The complex.

    """
    total = complexes.FiniteFreeComplex.empty(ring)
    for _ in range(int(rng.integers(1, blocks + 1))):
        kind = rng.choice(["koszul", "koszul", "free", "split"])
        if kind == "koszul":
            block = koszul_block(ring, rng, maxdeg, length)
        elif kind == "free":
            block = free_block(ring)
        else:
            block = split_block(ring, rng)
        block_length = block.high - block.low
        if block_length > length:
            continue
        block = complexes.shift(block, int(rng.integers(0, length - block_length + 1)))
        candidate = complexes.direct_sum(total, block)
        if max(candidate.ranks) <= maxrank and candidate.high - candidate.low <= length:
            total = candidate
    if total.is_empty():
        total = free_block(ring)
    for _ in range(basis_changes):
        total = _random_basis_change(total, rng, maxdeg)
    complexes.validate_complex(total)
    return total


def random_suite(seed, count, nvars=3, maxdeg=2, maxrank=3, length=4, blocks=3, basis_changes=4,
                 field=None, order="grevlex"):
    """Generate `count` random complexes; complex i uses the seed complex_seed(seed, i)"""
    ring = make_ring(nvars, field, order)
    for index in range(count):
        rng = np.random.default_rng(complex_seed(seed, index))
        cplx = random_complex(ring, rng, maxdeg, maxrank, length, blocks, basis_changes)
        cplx.name = f"random_{seed}_{index}"
        yield cplx


def koszul_family(seed, count, nvars=3, maxlen=3, maxdeg=2, field=None, order="grevlex"):
    """Generate `count` (sequence, Koszul complex) pairs"""
    ring = make_ring(nvars, field, order)
    for index in range(count):
        rng = np.random.default_rng(complex_seed(seed, index))
        sequence = random_sequence(ring, rng, maxlen, maxdeg)
        yield sequence, complexes.koszul_complex(ring, sequence)


def _random_basis_change(cplx, rng, maxdeg):
    degrees = [degree for degree in cplx.degrees() if cplx.rank(degree) >= 1]
    if not degrees:
        return cplx
    degree = int(rng.choice(degrees))
    rank = cplx.rank(degree)
    ring = cplx.ring
    if rank == 1 or rng.random() < 0.2:
        unit = random_coefficient(ring, rng)
        return complexes.scale_basis(cplx, degree, int(rng.integers(0, rank)), unit)
    row, column = (int(idx) for idx in rng.choice(rank, size=2, replace=False))
    if rng.random() < 0.5:
        multiplier = ring.constant(random_coefficient(ring, rng))
    else:
        multiplier = random_polynomial(ring, rng, 1, max_terms=2, min_degree=0)
    changed = complexes.change_basis(cplx, degree, row, column, multiplier)
    too_large = any(changed.differential(n).max_degree() > maxdeg for n in (degree, degree + 1))
    if too_large:
        logger.debug("Skipping basis change in degree %d, entry degree above %d", degree, maxdeg)
        return cplx
    return changed
