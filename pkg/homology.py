"""
Homology Module - Exact homological invariants of simplicial complexes
Reduced homology over Q and GF(p), Hochster-formula Betti tables, Reisner's
Cohen-Macaulay criterion, sequential Cohen-Macaulayness, nonpure
shellability and vertex decomposability
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from sympy import isprime

from complex_core import (
    Face,
    SimplicialComplex,
    face_sort_key,
    link,
    maximal_sets,
    pure_skeleton,
    restriction,
)
from exact_linalg import sparse_rank


logger = logging.getLogger(__name__)

HOCHSTER_MAX_VARIABLES = 16
SHELLING_MAX_FACETS = 10


class HomologyError(ValueError):
    """Raised for invalid homology or Betti number requests"""


class Decision(str, Enum):
    """Outcome of a capped search"""

    YES = 'yes'
    NO = 'no'
    UNDECIDED = 'undecided'


class ModuleKind(str, Enum):
    """Whether a Betti table describes the ideal I or the quotient S/I"""

    IDEAL = 'ideal'
    QUOTIENT = 'quotient'


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals (characteristic 0) or GF(p)"""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (p < 2 or p >= 2 ** 31 or not isprime(p)):
            raise HomologyError(f"Field characteristic must be 0 or a prime below 2^31, got {p}")

    @classmethod
    def parse(cls, text: str) -> 'FieldSpec':
        """Parse 'q' for the rationals or 'f<p>' (e.g. 'f2') for GF(p)"""
        code = text.strip().lower()
        if code in ('q', 'qq'):
            return cls(0)
        if code.startswith('f') and code[1:].isdigit():
            return cls(int(code[1:]))
        raise HomologyError(f"Unknown field {text!r}; use q, f2 or f<p>")

    @property
    def code(self) -> str:
        return 'q' if self.characteristic == 0 else f'f{self.characteristic}'

    def __str__(self) -> str:
        return 'QQ' if self.characteristic == 0 else f'GF({self.characteristic})'


QQ = FieldSpec(0)
GF2 = FieldSpec(2)


@dataclass(frozen=True)
class BettiTable:
    """
    Graded Betti numbers beta_{i,j} of an ideal or its quotient ring

    Entries are (i, j, value) triples with nonzero values, sorted by (i, j).
    """

    kind: ModuleKind
    entries: Tuple[Tuple[int, int, int], ...] = ()

    def __post_init__(self):
        merged: Dict[Tuple[int, int], int] = defaultdict(int)
        for i, j, value in self.entries:
            if value < 0:
                raise HomologyError(f"Negative Betti number at ({i}, {j})")
            merged[(i, j)] += value
        cleaned = tuple(sorted((i, j, v) for (i, j), v in merged.items() if v))
        object.__setattr__(self, 'kind', ModuleKind(self.kind))
        object.__setattr__(self, 'entries', cleaned)

    @classmethod
    def from_dict(cls, kind: ModuleKind, values: Dict[Tuple[int, int], int]) -> 'BettiTable':
        return cls(kind, tuple((i, j, v) for (i, j), v in values.items()))

    def as_dict(self) -> Dict[Tuple[int, int], int]:
        return {(i, j): v for i, j, v in self.entries}

    def get(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def _require_entries(self):
        if self.is_zero:
            raise HomologyError("Betti table is empty")

    def total_betti(self) -> List[int]:
        """Row sums beta_i = sum_j beta_{i,j}, for i = 0 .. pd"""
        self._require_entries()
        totals = [0] * (self.projdim() + 1)
        for i, _, v in self.entries:
            totals[i] += v
        return totals

    def regularity(self) -> int:
        """max{j - i : beta_{i,j} != 0}"""
        self._require_entries()
        return max(j - i for i, j, _ in self.entries)

    def projdim(self) -> int:
        """max{i : beta_{i,j} != 0 for some j}"""
        self._require_entries()
        return max(i for i, _, _ in self.entries)

    def to_ideal(self) -> 'BettiTable':
        """beta_{i,j}(I) = beta_{i+1,j}(S/I)"""
        if self.kind == ModuleKind.IDEAL:
            return self
        return BettiTable(
            ModuleKind.IDEAL,
            tuple((i - 1, j, v) for i, j, v in self.entries if i >= 1),
        )

    def to_quotient(self) -> 'BettiTable':
        if self.kind == ModuleKind.QUOTIENT:
            return self
        return BettiTable(
            ModuleKind.QUOTIENT,
            ((0, 0, 1),) + tuple((i + 1, j, v) for i, j, v in self.entries),
        )

    def format_table(self) -> str:
        """Render in the usual rows-by-(j - i), columns-by-i layout"""
        if self.is_zero:
            return "(zero)"
        pd = self.projdim()
        shifts = sorted({j - i for i, j, _ in self.entries})
        values = self.as_dict()
        width = max(len(str(v)) for _, _, v in self.entries) + 1
        header = "      " + "".join(str(i).rjust(width) for i in range(pd + 1))
        lines = [header, "total:" + "".join(str(t).rjust(width) for t in self.total_betti())]
        for shift in shifts:
            row = []
            for i in range(pd + 1):
                v = values.get((i, i + shift), 0)
                row.append(('.' if v == 0 else str(v)).rjust(width))
            lines.append(f"{shift:>5}:" + "".join(row))
        return "\n".join(lines)


@dataclass(frozen=True)
class HomologyProfile:
    """Dimensions of reduced homology groups, degree -1 upward"""

    dims: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'dims', tuple(sorted((k, d) for k, d in self.dims if d)))

    def __getitem__(self, k: int) -> int:
        return dict(self.dims).get(k, 0)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.dims)

    @property
    def is_acyclic(self) -> bool:
        return not self.dims

    def euler_characteristic(self) -> int:
        """Alternating sum of reduced Betti numbers"""
        return sum((1 if k % 2 == 0 else -1) * d for k, d in self.dims)


@lru_cache(maxsize=65536)
def _reduced_homology_dims(key: Tuple[int, Tuple[int, ...]], characteristic: int) -> Tuple[Tuple[int, int], ...]:
    n, masks = key
    facets = [tuple(v for v in range(n) if mask >> v & 1) for mask in masks]
    top = max(len(f) for f in facets)

    faces_by_size: Dict[int, set] = defaultdict(set)
    for facet in facets:
        for size in range(len(facet) + 1):
            faces_by_size[size].update(itertools.combinations(facet, size))
    index = {
        size: {face: idx for idx, face in enumerate(sorted(faces_by_size[size]))}
        for size in range(top + 1)
    }

    # boundary_ranks[s]: rank of the boundary map from faces of size s to size s - 1
    boundary_ranks = {}
    for size in range(1, top + 1):
        lower = index[size - 1]
        rows = []
        for face in index[size]:
            rows.append({
                lower[face[:pos] + face[pos + 1:]]: (1 if pos % 2 == 0 else -1)
                for pos in range(size)
            })
        boundary_ranks[size] = sparse_rank(rows, characteristic)

    dims = []
    for size in range(top + 1):
        d = len(index[size]) - boundary_ranks.get(size, 0) - boundary_ranks.get(size + 1, 0)
        dims.append((size - 1, d))
    return tuple(dims)


def reduced_homology(delta: SimplicialComplex, field: FieldSpec = QQ) -> HomologyProfile:
    """
    Reduced simplicial homology with field coefficients

    Args:
        delta: A non-void complex
        field: Coefficient field

    Returns:
        dim H~_k for every degree k >= -1 (zeros omitted)
    """
    if delta.is_void:
        raise HomologyError("Reduced homology of the void complex is undefined")
    return HomologyProfile(_reduced_homology_dims(delta.canonical_key(), field.characteristic))


def lcm_lattice(supports: Iterable[Face]) -> List[Face]:
    """All unions of nonempty subfamilies of the supports"""
    lattice = set()
    for support in supports:
        lattice |= {support | member for member in lattice}
        lattice.add(support)
    return sorted(lattice, key=face_sort_key)


def hochster_betti(ideal, field: FieldSpec = QQ, kind: ModuleKind = ModuleKind.IDEAL,
                   max_variables: int = HOCHSTER_MAX_VARIABLES) -> BettiTable:
    """
    Graded Betti numbers of a squarefree monomial ideal by Hochster's formula

    beta_{i,j}(S/I) sums dim H~_{j-i-1} of the restrictions of the
    Stanley-Reisner complex of I to the j-subsets W. Only subsets W in the
    lcm lattice of the generators can contribute, so only those are visited.

    Args:
        ideal: Nonzero squarefree monomial ideal
        field: Coefficient field
        kind: Table of I itself or of S/I
        max_variables: Ambient size cap

    Returns:
        The Betti table
    """
    from ideals import complex_of_ideal

    if not ideal.generators:
        raise HomologyError("Hochster's formula needs a nonzero ideal")
    if ideal.num_variables > max_variables:
        raise HomologyError(
            f"Ambient has {ideal.num_variables} variables, cap is {max_variables}"
        )

    delta = complex_of_ideal(ideal)
    values: Dict[Tuple[int, int], int] = defaultdict(int)
    values[(0, 0)] = 1
    for subset in lcm_lattice(ideal.generators):
        j = len(subset)
        profile = reduced_homology(restriction(delta, subset), field)
        for k, d in profile.dims:
            values[(j - k - 1, j)] += d

    table = BettiTable.from_dict(ModuleKind.QUOTIENT, values)
    logger.debug(f"Hochster table over {field} for {ideal}: {table.entries}")
    return table if ModuleKind(kind) == ModuleKind.QUOTIENT else table.to_ideal()


@lru_cache(maxsize=16384)
def _is_cohen_macaulay(key: Tuple[int, Tuple[int, ...]], characteristic: int) -> bool:
    n, masks = key
    names = tuple(str(v) for v in range(n))
    delta = SimplicialComplex.from_facets(names, [[v for v in range(n) if m >> v & 1] for m in masks])
    field = FieldSpec(characteristic)
    for face in delta.faces():
        lk = link(delta, face)
        top = lk.dimension
        profile = reduced_homology(lk, field)
        if any(d and k < top for k, d in profile.dims):
            return False
    return True


def is_cohen_macaulay(delta: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """
    Reisner's criterion: every link (of the empty face too) has vanishing
    reduced homology below its dimension

    Args:
        delta: A non-void complex
        field: Coefficient field

    Returns:
        True when the Stanley-Reisner ring is Cohen-Macaulay over the field
    """
    if delta.is_void:
        raise HomologyError("Cohen-Macaulayness of the void complex is undefined")
    return _is_cohen_macaulay(delta.canonical_key(), field.characteristic)


def is_sequentially_cm(delta: SimplicialComplex, field: FieldSpec = QQ) -> bool:
    """Duval's criterion: every pure i-skeleton is Cohen-Macaulay"""
    if delta.is_void:
        raise HomologyError("Sequential Cohen-Macaulayness of the void complex is undefined")
    return all(
        is_cohen_macaulay(pure_skeleton(delta, i), field)
        for i in range(-1, delta.dimension + 1)
    )


@dataclass(frozen=True)
class ShellingSearch:
    """Result of a shellability search, with a witness order when found"""

    decision: Decision
    order: Optional[Tuple[Face, ...]] = None

    @property
    def is_yes(self) -> bool:
        return self.decision == Decision.YES


def _extends_shelling(previous: List[Face], facet: Face) -> bool:
    # The new facet must meet the earlier ones in a pure complex of
    # dimension dim(facet) - 1
    meets = maximal_sets(facet & g for g in previous)
    return all(len(m) == len(facet) - 1 for m in meets)


def is_shellable(delta: SimplicialComplex, max_facets: int = SHELLING_MAX_FACETS) -> ShellingSearch:
    """
    Nonpure shellability by backtracking over facet orders

    Shellable complexes admit a shelling listing facets by weakly decreasing
    size, so only such orders are explored. Whether a facet can follow a set
    of earlier facets depends on the set alone, so dead sets are remembered.

    Args:
        delta: Complex with at least one facet
        max_facets: Facet count above which the search reports undecided

    Returns:
        ShellingSearch with a witness order when shellable
    """
    if delta.is_void:
        raise HomologyError("Shellability of the void complex is undefined")
    facets = list(delta.facets)
    if len(facets) > max_facets:
        logger.info(f"Shellability search skipped: {len(facets)} facets exceed cap {max_facets}")
        return ShellingSearch(Decision.UNDECIDED)

    by_size = sorted(range(len(facets)), key=lambda k: (-len(facets[k]), face_sort_key(facets[k])))
    dead = set()
    order: List[int] = []

    def search(used: frozenset) -> bool:
        if len(order) == len(facets):
            return True
        if used in dead:
            return False
        remaining = [k for k in by_size if k not in used]
        largest = len(facets[remaining[0]])
        previous = [facets[k] for k in order]
        for k in remaining:
            if len(facets[k]) != largest:
                break
            if previous and not _extends_shelling(previous, facets[k]):
                continue
            order.append(k)
            if search(used | {k}):
                return True
            order.pop()
        dead.add(used)
        return False

    if search(frozenset()):
        return ShellingSearch(Decision.YES, tuple(facets[k] for k in order))
    return ShellingSearch(Decision.NO)


def _maximal_masks(masks: Iterable[int]) -> Tuple[int, ...]:
    unique = sorted(set(masks), key=lambda m: -bin(m).count('1'))
    kept: List[int] = []
    for m in unique:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept))


@lru_cache(maxsize=65536)
def _is_vertex_decomposable(masks: Tuple[int, ...]) -> bool:
    if len(masks) <= 1:
        return True
    support = 0
    for m in masks:
        support |= m
    v = 0
    while support >> v:
        bit = 1 << v
        v += 1
        if not support & bit:
            continue
        lk = _maximal_masks(m & ~bit for m in masks if m & bit)
        dl = _maximal_masks(m & ~bit for m in masks)
        # Shedding vertex: no facet of the link is a facet of the deletion
        if set(lk) & set(dl):
            continue
        if _is_vertex_decomposable(lk) and _is_vertex_decomposable(dl):
            return True
    return False


def is_vertex_decomposable(delta: SimplicialComplex) -> bool:
    """
    Nonpure vertex decomposability

    A simplex (the irrelevant complex included) is vertex decomposable;
    otherwise some shedding vertex must have vertex decomposable link and
    deletion. Results are memoized on canonical facet bitmasks.
    """
    if delta.is_void:
        raise HomologyError("Vertex decomposability of the void complex is undefined")
    return _is_vertex_decomposable(delta.canonical_key()[1])
