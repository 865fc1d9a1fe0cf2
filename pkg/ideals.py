"""
Ideals Module - Squarefree monomial ideals
Facet and Stanley-Reisner ideals, Alexander duality, the dual ideal J of a
complex and its expansion, linear quotients and their Betti numbers
"""

import itertools
import logging
from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from complex_core import (
    ExpansionVector,
    Face,
    SimplicialComplex,
    expand,
    expanded_names,
    expansion_vertices,
    face_sort_key,
    minimal_sets,
)
from homology import BettiTable, Decision, ModuleKind


logger = logging.getLogger(__name__)

LQ_MAX_GENERATORS = 12


class IdealError(ValueError):
    """Raised for malformed ideals or invalid ideal operations"""


def minimal_transversals(family: Iterable[Iterable[int]]) -> List[Face]:
    """
    Minimal hitting sets of a family of sets

    Built edge by edge: every transversal of the edges seen so far either
    already meets the next edge or is extended by one of its elements, and
    the result is projected back onto its minimal members.

    Args:
        family: Sets to be hit

    Returns:
        Canonically ordered minimal transversals; [] if some set is empty,
        [frozenset()] for the empty family
    """
    transversals: List[Face] = [frozenset()]
    for edge in family:
        edge = frozenset(edge)
        if not edge:
            return []
        extended = set()
        for t in transversals:
            if t & edge:
                extended.add(t)
            else:
                extended.update(t | {v} for v in edge)
        transversals = minimal_sets(extended)
    return sorted(transversals, key=face_sort_key)


@dataclass(frozen=True)
class SquarefreeMonomial:
    """x^C for a nonempty support C"""

    support: Face

    def __post_init__(self):
        support = frozenset(self.support)
        if not support:
            raise IdealError("The unit monomial is not a legal generator")
        object.__setattr__(self, 'support', support)

    def render(self, names: Sequence[str]) -> str:
        return "*".join(names[v] for v in sorted(self.support))


@dataclass(frozen=True)
class MonomialIdeal:
    """
    Squarefree monomial ideal given by its minimal generators

    Generators are supports (vertex index sets) forming an antichain in
    canonical order. No generators means the zero ideal.
    """

    variables: Tuple[str, ...]
    generators: Tuple[Face, ...] = ()

    def __post_init__(self):
        names = tuple(self.variables)
        if len(set(names)) != len(names):
            raise IdealError(f"Duplicate variable names in {names}")
        supports = []
        for g in self.generators:
            support = SquarefreeMonomial(g).support
            for v in support:
                if not isinstance(v, int) or not 0 <= v < len(names):
                    raise IdealError(f"Variable index {v} out of range for {len(names)} variables")
            supports.append(support)
        object.__setattr__(self, 'variables', names)
        object.__setattr__(self, 'generators', tuple(minimal_sets(supports)))

    @classmethod
    def from_named_generators(cls, variables: Sequence[str], generators: Iterable[Iterable[str]]) -> 'MonomialIdeal':
        index = {name: i for i, name in enumerate(variables)}
        resolved = []
        for g in generators:
            try:
                resolved.append(frozenset(index[v] for v in g))
            except KeyError as e:
                raise IdealError(f"Unknown variable name {e.args[0]!r}") from None
        return cls(tuple(variables), tuple(resolved))

    @property
    def num_variables(self) -> int:
        return len(self.variables)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def contains(self, exponents: Mapping[int, int]) -> bool:
        """
        Membership of an arbitrary monomial, given as {variable: exponent}

        A monomial lies in a squarefree monomial ideal iff some generator's
        support is inside the monomial's support.
        """
        support = frozenset(v for v, e in exponents.items() if e > 0)
        return any(g <= support for g in self.generators)

    def named_generators(self) -> frozenset:
        return frozenset(frozenset(self.variables[v] for v in g) for g in self.generators)

    def canonical_key(self) -> str:
        """Stable text key: variable table plus generator supports"""
        gens = ";".join(",".join(str(v) for v in sorted(g)) for g in self.generators)
        return "|".join(self.variables) + "#" + gens

    def __str__(self) -> str:
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(SquarefreeMonomial(g).render(self.variables) for g in self.generators) + ")"


def facet_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """I(delta) = (x^F : F a facet)"""
    if delta.is_void or delta.is_irrelevant:
        raise IdealError(f"Facet ideal needs nonempty facets, got {delta}")
    return MonomialIdeal(delta.vertex_names, delta.facets)


def stanley_reisner_ideal(delta: SimplicialComplex) -> MonomialIdeal:
    """
    I_delta, generated by the minimal non-faces

    A set is a non-face iff it meets the complement of every facet, so the
    minimal non-faces are the minimal transversals of the facet complements.
    """
    if delta.is_void:
        raise IdealError("The void complex has the unit ideal as Stanley-Reisner ideal")
    if delta.is_full_simplex:
        logger.warning("Stanley-Reisner ideal of the full simplex is the zero ideal")
    ground = delta.ground_set
    return MonomialIdeal(delta.vertex_names, tuple(minimal_transversals(ground - f for f in delta.facets)))


def complex_of_ideal(ideal: MonomialIdeal) -> SimplicialComplex:
    """
    The complex whose Stanley-Reisner ideal is the given ideal

    A set is a face iff it contains no generator support, i.e. its
    complement hits every support; facets are complements of the minimal
    transversals of the generators.
    """
    ground = frozenset(range(ideal.num_variables))
    return SimplicialComplex.from_facets(
        ideal.variables, [ground - t for t in minimal_transversals(ideal.generators)]
    )


def alexander_dual_ideal(ideal: MonomialIdeal) -> MonomialIdeal:
    """Intersection of the primes generated by the generator supports"""
    if ideal.is_zero:
        raise IdealError("Alexander dual of the zero ideal is undefined")
    return MonomialIdeal(ideal.variables, tuple(minimal_transversals(ideal.generators)))


def intersect_primes(supports: Iterable[Iterable[int]], variables: Sequence[str]) -> MonomialIdeal:
    """
    Intersection of the primes P_F = (x_i : i in F), by brute force

    A squarefree monomial lies in every P_F iff its support meets every F;
    all subsets of the variables are scanned, so keep the ambient small.
    """
    supports = [frozenset(s) for s in supports]
    n = len(variables)
    members = []
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            subset = frozenset(subset)
            if all(subset & s for s in supports):
                members.append(subset)
    return MonomialIdeal(tuple(variables), tuple(members))


def dual_j(delta: SimplicialComplex) -> MonomialIdeal:
    """J_delta, the Alexander dual of the facet ideal"""
    return alexander_dual_ideal(facet_ideal(delta))


def expand_j_generators(ideal: MonomialIdeal, alpha: ExpansionVector) -> MonomialIdeal:
    """
    Substitute x_i by x_{i1} ... x_{i s_i} in every generator

    Args:
        ideal: Ideal on X
        alpha: Expansion vector of matching length

    Returns:
        The substituted ideal on X^alpha
    """
    if len(alpha) != ideal.num_variables:
        raise IdealError(
            f"Expansion vector has length {len(alpha)}, expected {ideal.num_variables}"
        )
    names = expanded_names(ideal.variables, alpha)
    offsets = alpha.offsets()
    generators = []
    for g in ideal.generators:
        generators.append(frozenset(
            offsets[v] + c for v in g for c in range(alpha[v])
        ))
    return MonomialIdeal(names, tuple(generators))


def has_linear_resolution(table: BettiTable) -> bool:
    """All generators in one degree d and regularity d (ideal-kind table)"""
    table = table.to_ideal()
    degrees = {j for i, j, _ in table.entries if i == 0}
    return len(degrees) == 1 and table.regularity() == degrees.pop()


@dataclass(frozen=True)
class LinearQuotientsCertificate:
    """
    An order of linear quotients on the generators with its set_I data

    order lists generator indices of the ideal; sets[t] is the set of
    variables generating the colon of the earlier generators by the t-th one.
    The certificate is checked against the ideal on construction.
    """

    ideal: MonomialIdeal
    order: Tuple[int, ...]
    sets: Tuple[Face, ...]

    def __post_init__(self):
        order = tuple(self.order)
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, 'sets', sets)
        if sorted(order) != list(range(len(self.ideal.generators))):
            raise IdealError("Certificate order is not a permutation of the generators")
        if len(sets) != len(order):
            raise IdealError("Certificate needs one set per generator")
        if not verify_colon_by_membership(self.ideal, order, sets):
            raise IdealError("Certificate sets do not generate the colon ideals")

    @property
    def ordered_generators(self) -> List[Face]:
        return [self.ideal.generators[k] for k in self.order]

    def projdim(self) -> int:
        return max(len(s) for s in self.sets)


def verify_colon_by_membership(ideal: MonomialIdeal, order: Sequence[int], sets: Sequence[Face]) -> bool:
    """
    Check that (f_1..f_{t-1}) : f_t is generated by the variables sets[t]

    Two inclusions, each by monomial membership: x * f_t lies in the earlier
    ideal for every listed x, and every colon generator lcm(f_s, f_t) / f_t
    is divisible by some listed x.
    """
    gens = [ideal.generators[k] for k in order]
    if sets and sets[0]:
        return False
    for t in range(1, len(gens)):
        earlier = MonomialIdeal(ideal.variables, tuple(gens[:t]))
        f_t = gens[t]
        for x in sets[t]:
            exponents: Dict[int, int] = {v: 1 for v in f_t}
            exponents[x] = exponents.get(x, 0) + 1
            if not earlier.contains(exponents):
                return False
        variable_ideal = MonomialIdeal(ideal.variables, tuple(frozenset([x]) for x in sets[t]))
        for f_s in gens[:t]:
            quotient = {v: 1 for v in f_s - f_t}
            if not variable_ideal.contains(quotient):
                return False
    return True


def _colon_variables(previous: Sequence[Face], f: Face) -> Optional[Face]:
    """Variables generating (previous) : f, or None if not variable-generated"""
    differences = [g - f for g in previous]
    variables = frozenset(v for d in differences if len(d) == 1 for v in d)
    if all(d & variables for d in differences):
        return variables
    return None


def certificate_from_order(ideal: MonomialIdeal, order: Sequence[int]) -> Optional[LinearQuotientsCertificate]:
    """Certificate for a given generator order, or None if it is not linear quotients"""
    gens = ideal.generators
    sets = []
    for t, k in enumerate(order):
        variables = _colon_variables([gens[j] for j in order[:t]], gens[k])
        if variables is None:
            return None
        sets.append(variables)
    return LinearQuotientsCertificate(ideal, tuple(order), tuple(sets))


@dataclass(frozen=True)
class LinearQuotientsSearch:
    """Result of the linear quotients search"""

    decision: Decision
    certificate: Optional[LinearQuotientsCertificate] = None

    @property
    def is_yes(self) -> bool:
        return self.decision == Decision.YES


def linear_quotients_order(ideal: MonomialIdeal, max_generators: int = LQ_MAX_GENERATORS) -> LinearQuotientsSearch:
    """
    Search for an order of linear quotients by backtracking

    Generators are tried in canonical order. Extending a prefix by f only
    depends on the set of generators already placed, so failed sets are
    remembered.

    Args:
        ideal: Nonzero ideal
        max_generators: Generator count above which the search is undecided

    Returns:
        LinearQuotientsSearch with the first certificate found
    """
    if ideal.is_zero:
        raise IdealError("Linear quotients of the zero ideal are undefined")
    gens = ideal.generators
    if len(gens) > max_generators:
        logger.info(f"Linear quotients search skipped: {len(gens)} generators exceed cap {max_generators}")
        return LinearQuotientsSearch(Decision.UNDECIDED)

    order: List[int] = []
    sets: List[Face] = []
    dead = set()

    def search(used: frozenset) -> bool:
        if len(order) == len(gens):
            return True
        if used in dead:
            return False
        previous = [gens[k] for k in order]
        for k in range(len(gens)):
            if k in used:
                continue
            variables = _colon_variables(previous, gens[k])
            if variables is None:
                continue
            order.append(k)
            sets.append(variables)
            if search(used | {k}):
                return True
            order.pop()
            sets.pop()
        dead.add(used)
        return False

    if search(frozenset()):
        return LinearQuotientsSearch(
            Decision.YES, LinearQuotientsCertificate(ideal, tuple(order), tuple(sets))
        )
    return LinearQuotientsSearch(Decision.NO)


def betti_from_linear_quotients(certificate: LinearQuotientsCertificate,
                                ideal: Optional[MonomialIdeal] = None) -> BettiTable:
    """
    beta_{i,j}(I) = sum over generators f_t of degree j - i of C(|set(f_t)|, i)

    Args:
        certificate: Verified linear quotients certificate
        ideal: The ideal the certificate claims to describe

    Returns:
        Ideal-kind Betti table
    """
    if ideal is not None and ideal != certificate.ideal:
        raise IdealError("Certificate does not belong to the given ideal")
    values: Dict[Tuple[int, int], int] = {}
    for generator, variables in zip(certificate.ordered_generators, certificate.sets):
        degree = len(generator)
        for i in range(len(variables) + 1):
            key = (i, degree + i)
            values[key] = values.get(key, 0) + comb(len(variables), i)
    return BettiTable.from_dict(ModuleKind.IDEAL, values)


def expansion_order(delta: SimplicialComplex, certificate: LinearQuotientsCertificate,
                    alpha: ExpansionVector) -> LinearQuotientsCertificate:
    """
    Linear quotients order on I(delta^alpha) induced by one on I(delta)

    Facets with the same base facet are compared lexicographically on their
    copy indices (taken in increasing base vertex order); otherwise the base
    facets' order decides. The resulting sets are checked against

        {x_it : x_i in set(base), all t} union {x_it : x_ir in F, t < r}

    Args:
        delta: Base complex
        certificate: Certificate for I(delta)
        alpha: Expansion vector

    Returns:
        Verified certificate for I(delta^alpha)
    """
    base_ideal = facet_ideal(delta)
    if certificate.ideal != base_ideal:
        raise IdealError("Certificate is not a certificate of the facet ideal of the complex")
    if len(alpha) != delta.num_vertices:
        raise IdealError(
            f"Expansion vector has length {len(alpha)}, expected {delta.num_vertices}"
        )

    expanded = expand(delta, alpha)
    expanded_ideal = facet_ideal(expanded)
    vertices = expansion_vertices(alpha)
    offsets = alpha.offsets()
    position = {g: k for k, g in enumerate(expanded_ideal.generators)}
    rank = {base_ideal.generators[k]: t for t, k in enumerate(certificate.order)}
    base_sets = {base_ideal.generators[k]: s for k, s in zip(certificate.order, certificate.sets)}

    def base_of(facet: Face) -> Face:
        return frozenset(vertices[v].base for v in facet)

    def sort_key(facet: Face):
        copies = tuple(vertices[v].copy for v in sorted(facet))
        return (rank[base_of(facet)], copies)

    ordered = sorted(expanded_ideal.generators, key=sort_key)
    result = certificate_from_order(expanded_ideal, [position[f] for f in ordered])
    if result is None:
        raise IdealError("Induced order is not an order of linear quotients")

    for facet, variables in zip(result.ordered_generators, result.sets):
        expected = set()
        for i in base_sets[base_of(facet)]:
            expected.update(range(offsets[i], offsets[i] + alpha[i]))
        for v in facet:
            expected.update(offsets[vertices[v].base] + t for t in range(vertices[v].copy - 1))
        if frozenset(expected) != variables:
            raise IdealError(f"Set of {sorted(facet)} disagrees with the expansion formula")
    return result
