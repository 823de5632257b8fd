"""Homology oracle

Computes the homology modules H_n(F) = ker d_n / im d_{n+1} of a finite free complex with module
Gröbner bases, and from them the dimension

    dim F = sup{ dim H_n(F) - n }.

This does not use any ideal of minors of the differentials, so it serves as an independent check
of :func:`fitdim_utils.dimform.dim_via_fitting`.

Module elements are vectors of polynomials. Their terms are ordered position over term: a smaller
position index is larger, ties are broken by the monomial order of the ring. Kernels and lifts use
augmented vectors (v; e_j) whose first block of positions dominates the second one.

"""
import logging

from fitdim_utils import complexes
from fitdim_utils.exceptions import LiftError, StructuralError
from fitdim_utils.groebner import budget_deadline, check_budget
from fitdim_utils.krull import (MINUS_INFINITY, PLUS_INFINITY, ExtendedDim, dim_monomial_quotient,
                                dim_quotient, sup)
from fitdim_utils.matpoly import MapOfFree, minor_ideal
from fitdim_utils.polyring import monomial_div, monomial_divides, monomial_lcm, monomial_mul

logger = logging.getLogger(__name__)


class FreeModuleVector:
    """Element of the free module R^rank

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        rank (int): Rank of the ambient free module.
        terms (tuple): ((position, monomial), coefficient) pairs, strictly descending in the
            position over term order.

    """
    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring, rank, terms):
        self.ring = ring
        self.rank = rank
        self.terms = terms

    @classmethod
    def from_dict(cls, ring, rank, collected):
        key = _pot_key(ring)
        terms = sorted(((pm, c) for pm, c in collected.items() if c != 0),
                       key=lambda term: key(term[0]), reverse=True)
        return cls(ring, rank, tuple(terms))

    @classmethod
    def from_components(cls, ring, components):
        """Vector with the given polynomial components"""
        collected = {}
        for pos, poly in enumerate(components):
            if poly.ring != ring:
                raise StructuralError(f"Component {poly} is not an element of {ring}")
            for mon, coeff in poly.terms:
                collected[(pos, mon)] = coeff
        return cls.from_dict(ring, len(components), collected)

    def components(self):
        """The vector as a list of polynomials"""
        parts = [{} for _ in range(self.rank)]
        for (pos, mon), coeff in self.terms:
            parts[pos][mon] = coeff
        return [self.ring._from_dict(part) for part in parts]

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    @property
    def leading_position(self):
        return self.terms[0][0][0]

    def mul_term(self, mon, coeff):
        field = self.ring.field
        return FreeModuleVector(self.ring, self.rank,
                                tuple(((pos, monomial_mul(m, mon)), field.mul(c, coeff))
                                      for (pos, m), c in self.terms))

    def monic(self):
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.terms[0][1])
        field = self.ring.field
        return FreeModuleVector(self.ring, self.rank,
                                tuple((pm, field.mul(c, inv)) for pm, c in self.terms))

    def __sub__(self, other):
        field = self.ring.field
        collected = dict(self.terms)
        for pm, coeff in other.terms:
            collected[pm] = field.sub(collected.get(pm, 0), coeff)
        return FreeModuleVector.from_dict(self.ring, self.rank, collected)

    def __neg__(self):
        field = self.ring.field
        return FreeModuleVector(self.ring, self.rank,
                                tuple((pm, field.neg(c)) for pm, c in self.terms))

    def block(self, start, stop):
        """Components start..stop-1 as a vector of rank stop - start"""
        return FreeModuleVector(self.ring, stop - start,
                                tuple(((pos - start, mon), c) for (pos, mon), c in self.terms
                                      if start <= pos < stop))

    def __eq__(self, other):
        return isinstance(other, FreeModuleVector) and self.ring == other.ring and \
            self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, self.terms))

    def __repr__(self):
        return "FreeModuleVector(" + ", ".join(str(c) for c in self.components()) + ")"


def apply_map(matrix, vector):
    """Image of a vector under a map of free modules"""
    comps = vector.components()
    images = []
    for row in matrix.entries:
        total = matrix.ring.zero()
        for entry, comp in zip(row, comps):
            if entry and comp:
                total = total + entry * comp
        images.append(total)
    return images


def module_normal_form(vector, basis):
    """Remainder of the division of a vector by a list of vectors"""
    divisors = []
    for gen in basis:
        if gen:
            (pos, mon), coeff = gen.terms[0]
            divisors.append((pos, mon, gen.ring.field.inv(coeff), gen.terms[1:]))
    if not divisors or not vector:
        return vector
    ring = vector.ring
    field = ring.field
    key = _pot_key(ring)
    rest = dict(vector.terms)
    remainder = {}
    while rest:
        pm = max(rest, key=key)
        coeff = rest.pop(pm)
        pos, mon = pm
        for lead_pos, lead_mon, lead_inv, tail in divisors:
            if lead_pos == pos and monomial_divides(lead_mon, mon):
                q_mon = monomial_div(mon, lead_mon)
                q_coeff = field.mul(coeff, lead_inv)
                for (t_pos, t_mon), t_coeff in tail:
                    t_pm = (t_pos, monomial_mul(t_mon, q_mon))
                    value = field.sub(rest.get(t_pm, 0), field.mul(t_coeff, q_coeff))
                    if value == 0:
                        rest.pop(t_pm, None)
                    else:
                        rest[t_pm] = value
                break
        else:
            remainder[pm] = coeff
    return FreeModuleVector.from_dict(ring, vector.rank, remainder)


def module_groebner(vectors):
    """Gröbner basis of a submodule in the position over term order

    Args:
        vectors (list): Generators, all of one rank over one ring.

    Returns:
        list:
            Monic basis vectors; no leading term divides another one.

    """
    basis = []
    leads = []
    pairs = set()
    deadline = budget_deadline()

    def add(vector):
        idx = len(basis)
        basis.append(vector)
        leads.append(vector.terms[0][0])
        pairs.update((other, idx) for other in range(idx) if leads[other][0] == leads[idx][0])

    for vector in vectors:
        vector = module_normal_form(vector, basis)
        if vector:
            add(vector.monic())

    while pairs:
        check_budget(deadline)
        pair = min(pairs, key=lambda p: (sum(monomial_lcm(leads[p[0]][1], leads[p[1]][1])), p))
        pairs.remove(pair)
        left, right = pair
        lcm = monomial_lcm(leads[left][1], leads[right][1])
        if _chain_criterion(left, right, lcm, leads, pairs):
            continue
        rem = module_normal_form(_s_vector(basis[left], basis[right], lcm), basis)
        if rem:
            add(rem.monic())
    return _minimal(basis)


def kernel_gens(matrix):
    """Generators of the kernel of a map of free modules

    The vectors (column_j; e_j) generate the graph of the map; the elements of a position over term
    Gröbner basis of it whose first block vanishes are a Gröbner basis of the kernel. The result is
    made minimal by dropping generators that lie in the span of the others.

    Args:
        matrix (~fitdim_utils.matpoly.MapOfFree): The map.

    Returns:
        list:
            :class:`FreeModuleVector` of rank source_rank.

    """
    ring = matrix.ring
    target, source = matrix.shape
    if source == 0:
        return []
    if target == 0:
        return [_unit_vector(ring, source, j) for j in range(source)]
    graph = [_augmented(ring, list(matrix.column(j)), source, j) for j in range(source)]
    basis = module_groebner(graph)
    kernel = [gen.block(target, target + source) for gen in basis
              if gen.leading_position >= target]
    return minimize_generators(kernel)


def minimize_generators(vectors):
    """Drop generators that lie in the submodule generated by the remaining ones"""
    kept = [vector for vector in vectors if vector]
    idx = len(kept) - 1
    while idx >= 0 and len(kept) > 1:
        others = kept[:idx] + kept[idx + 1:]
        if not module_normal_form(kept[idx], module_groebner(others)):
            kept = others
        idx -= 1
    return kept


class Presentation:
    """Finitely presented module, the cokernel of R^r -> R^g

    Args:
        ring (~fitdim_utils.polyring.PolyRing): The ring.
        generator_count (int): Number g of generators.
        relations (~fitdim_utils.matpoly.MapOfFree): Relation matrix with g rows.

    """
    def __init__(self, ring, generator_count, relations):
        if relations.target_rank != generator_count:
            raise StructuralError("The relation matrix needs one row per generator")
        self.ring = ring
        self.generator_count = generator_count
        self.relations = relations

    @property
    def relation_count(self):
        return self.relations.source_rank

    def to_json(self):
        return {"generators": self.generator_count, "relations": self.relation_count}

    def __repr__(self):
        return f"Presentation({self.generator_count} generators, {self.relation_count} relations)"


def prune_presentation(presentation):
    """Remove generators that a relation with a unit entry expresses through the others

    Zero relations are dropped as well. The result presents an isomorphic module.

    """
    ring = presentation.ring
    field = ring.field
    count = presentation.generator_count
    columns = [list(col) for col in presentation.relations.columns() if any(col)]
    while True:
        pivot = next(((i, j) for j, col in enumerate(columns) for i, entry in enumerate(col)
                      if entry and entry.is_constant()), None)
        if pivot is None:
            break
        row, col_idx = pivot
        pivot_col = columns.pop(col_idx)
        inv = field.inv(pivot_col[row].constant_term())
        reduced = []
        for col in columns:
            factor = col[row].scale(inv) if col[row] else None
            if factor is not None:
                col = [entry - factor * other for entry, other in zip(col, pivot_col)]
            col = col[:row] + col[row + 1:]
            if any(col):
                reduced.append(col)
        columns = reduced
        count -= 1
    rows = [[col[i] for col in columns] for i in range(count)]
    return Presentation(ring, count, MapOfFree(ring, count, len(columns), rows))


def homology_presentation(complex_, degree):
    """Presentation of H_n = ker d_n / im d_{n+1}

    Generators are the kernel generators K of d_n; relations are the lifts of the columns of
    d_{n+1} through K together with the syzygies of K, all read off one Gröbner basis of the
    vectors (K_i; e_i).

    Args:
        complex_ (~fitdim_utils.complexes.FiniteFreeComplex): The complex.
        degree (int): Degree n.

    Returns:
        Presentation:
            Pruned presentation of H_n.

    Raises:
        ~fitdim_utils.exceptions.LiftError: If a boundary is not a combination of the cycles.

    """
    complexes.require_valid(complex_)
    ring = complex_.ring
    rank = complex_.rank(degree)
    cycles = kernel_gens(complex_.differential(degree))
    count = len(cycles)
    if count == 0:
        return Presentation(ring, 0, MapOfFree.zero(ring, 0, 0))
    augmented = [_augmented(ring, cycle.components(), count, i) for i, cycle in enumerate(cycles)]
    basis = module_groebner(augmented)
    columns = []
    for boundary in complex_.differential(degree + 1).columns():
        rem = module_normal_form(_augmented(ring, list(boundary), count, None), basis)
        if rem and rem.leading_position < rank:
            raise LiftError(f"Boundary {list(boundary)} is not a cycle combination in degree "
                            f"{degree}")
        columns.append((-rem).block(rank, rank + count).components())
    for gen in basis:
        if gen.leading_position >= rank:
            columns.append(gen.block(rank, rank + count).components())
    rows = [[col[i] for col in columns] for i in range(count)]
    relations = MapOfFree(ring, count, len(columns), rows)
    return prune_presentation(Presentation(ring, count, relations))


def dim_module(presentation):
    """Krull dimension of a finitely presented module via its zeroth Fitting ideal"""
    if presentation.generator_count == 0:
        return MINUS_INFINITY
    return dim_quotient(minor_ideal(presentation.relations, presentation.generator_count))


def dim_module_initial(presentation):
    """Krull dimension of a presented module from the initial module of its relations

    R^g/N and R^g/in(N) have the same dimension, and the latter is the direct sum of the monomial
    quotients R/in(N)_i over the positions i.

    """
    count = presentation.generator_count
    if count == 0:
        return MINUS_INFINITY
    ring = presentation.ring
    vectors = [FreeModuleVector.from_components(ring, col)
               for col in presentation.relations.columns()]
    leads = [gen.terms[0][0] for gen in module_groebner(vectors)]
    return sup(dim_monomial_quotient(ring, [mon for pos, mon in leads if pos == idx])
               for idx in range(count))


class HomologyEntry:
    """Homology in one degree

    Attributes:
        degree (int): Degree n.
        presentation (Presentation): Presentation of H_n.
        dim (ExtendedDim): dim H_n, -inf iff H_n = 0.

    """
    def __init__(self, degree, presentation, dim):
        self.degree = degree
        self.presentation = presentation
        self.dim = dim

    def is_zero(self):
        return self.dim == MINUS_INFINITY

    def to_json(self):
        data = self.presentation.to_json()
        data.update({"degree": self.degree, "dim": self.dim.to_json()})
        return data


class HomologyTable:
    """Homology of a complex in all degrees

    Attributes:
        entries (dict): Map degree -> :class:`HomologyEntry` for n in [a, b].
        nvars (int): Dimension of the ring.
        graded (bool): Whether the complex is graded.

    """
    def __init__(self, entries, nvars, graded=False):
        self.entries = dict(entries)
        self.nvars = nvars
        self.graded = graded

    def nonzero_degrees(self):
        return [degree for degree, entry in sorted(self.entries.items()) if not entry.is_zero()]

    @property
    def inf_h(self):
        """ExtendedDim: Lowest degree with nonzero homology, +inf if there is none."""
        degrees = self.nonzero_degrees()
        return ExtendedDim(degrees[0]) if degrees else PLUS_INFINITY

    @property
    def sup_h(self):
        """ExtendedDim: Highest degree with nonzero homology, -inf if there is none."""
        degrees = self.nonzero_degrees()
        return ExtendedDim(degrees[-1]) if degrees else MINUS_INFINITY

    @property
    def dim(self):
        """ExtendedDim: sup{dim H_n - n}."""
        return sup(entry.dim - entry.degree for entry in self.entries.values()
                   if not entry.is_zero())

    @property
    def dual_proj_dim(self):
        """ExtendedDim: -inf H(F), the projective dimension of Hom(F, R) for graded complexes."""
        return -self.inf_h

    def is_acyclic(self):
        """Whether H_n = 0 for every n above the lowest degree"""
        if not self.entries:
            return True
        low = min(self.entries)
        return all(entry.is_zero() for degree, entry in self.entries.items() if degree > low)

    def to_json(self):
        return {"inf_h": self.inf_h.to_json(), "sup_h": self.sup_h.to_json(),
                "dim": self.dim.to_json(), "graded": self.graded,
                "degrees": [entry.to_json() for _, entry in sorted(self.entries.items())]}


def homology_table(complex_):
    """HomologyTable of a complex"""
    complexes.require_valid(complex_)
    entries = {}
    for degree in complex_.degrees():
        presentation = homology_presentation(complex_, degree)
        entries[degree] = HomologyEntry(degree, presentation, dim_module(presentation))
        logger.debug("H_%d: %r, dim %s", degree, presentation, entries[degree].dim)
    return HomologyTable(entries, complex_.ring.nvars, complexes.is_graded(complex_))


def dim_via_homology(complex_):
    """Dimension sup{dim H_n - n} of a complex from its homology

    Returns:
        (ExtendedDim, HomologyTable):
            The dimension and the homology table.

    """
    table = homology_table(complex_)
    logger.debug("dim via homology of %r: %s", complex_, table.dim)
    return table.dim, table


def proj_dim(complex_):
    """-inf H(Hom(F, R)), the projective dimension of F when the dual is acyclic

    Returns:
        (ExtendedDim, bool):
            The value and whether the homology of Hom(F, R) is concentrated in its bottom
            degree. Only then is the value a projective dimension.

    """
    table = homology_table(complexes.dual_complex(complex_))
    return -table.inf_h, table.is_acyclic()


def foxby_codimension(table, nvars=None):
    """inf{codim H_n + n} with codim H_n = nvars - dim H_n; +inf for exact complexes"""
    nvars = table.nvars if nvars is None else nvars
    values = [ExtendedDim(nvars) - entry.dim + entry.degree
              for entry in table.entries.values() if not entry.is_zero()]
    return min(values, default=PLUS_INFINITY)


def _pot_key(ring):
    order_key = ring.order.key
    return lambda pm: (-pm[0], order_key(pm[1]))


def _unit_vector(ring, rank, idx):
    return FreeModuleVector(ring, rank, (((idx, (0,) * ring.nvars), ring.field.convert(1)),))


def _augmented(ring, components, extra, idx):
    """(components; e_idx) in R^(len(components) + extra); idx None gives (components; 0)"""
    padding = [ring.zero()] * extra
    if idx is not None:
        padding[idx] = ring.one()
    return FreeModuleVector.from_components(ring, list(components) + padding)


def _s_vector(left, right, lcm):
    field = left.ring.field
    (_, mon1), coeff1 = left.terms[0]
    (_, mon2), coeff2 = right.terms[0]
    return left.mul_term(monomial_div(lcm, mon1), field.inv(coeff1)) - \
        right.mul_term(monomial_div(lcm, mon2), field.inv(coeff2))


def _chain_criterion(left, right, lcm, leads, pairs):
    position = leads[left][0]
    for other, (pos, mon) in enumerate(leads):
        if other in (left, right) or pos != position or not monomial_divides(mon, lcm):
            continue
        if (min(left, other), max(left, other)) not in pairs and \
                (min(right, other), max(right, other)) not in pairs:
            return True
    return False


def _minimal(basis):
    kept = []
    for idx, gen in enumerate(basis):
        pos, mon = gen.terms[0][0]
        redundant = any(other.terms[0][0][0] == pos and
                        monomial_divides(other.terms[0][0][1], mon) and
                        (other.terms[0][0][1] != mon or other_idx < idx)
                        for other_idx, other in enumerate(basis) if other_idx != idx)
        if not redundant:
            kept.append(gen)
    return kept
