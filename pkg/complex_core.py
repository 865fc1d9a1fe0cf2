"""
Complex Core Module - Simplicial complexes and the expansion functor
Handles construction, canonical ordering, expansion, complements, Alexander
duals, links, deletions, restrictions and pure skeletons
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple


logger = logging.getLogger(__name__)

VertexId = int
Face = FrozenSet[int]


class ComplexError(ValueError):
    """Raised for malformed complexes or invalid complex operations"""


def face_sort_key(face: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    """Canonical order: size first, then lexicographic on sorted members"""
    members = tuple(sorted(face))
    return (len(members), members)


def maximal_sets(sets: Iterable[Iterable[int]]) -> List[Face]:
    """
    Keep the inclusion-maximal members of a family of sets

    Args:
        sets: Family of vertex sets (duplicates allowed)

    Returns:
        Canonically ordered antichain
    """
    unique = {frozenset(s) for s in sets}
    # Larger sets first so each candidate only needs checking against kept ones
    ordered = sorted(unique, key=face_sort_key, reverse=True)
    kept: List[Face] = []
    for candidate in ordered:
        if not any(candidate < other for other in kept):
            kept.append(candidate)
    return sorted(kept, key=face_sort_key)


def minimal_sets(sets: Iterable[Iterable[int]]) -> List[Face]:
    """Keep the inclusion-minimal members of a family of sets"""
    unique = {frozenset(s) for s in sets}
    ordered = sorted(unique, key=face_sort_key)
    kept: List[Face] = []
    for candidate in ordered:
        if not any(other < candidate for other in kept):
            kept.append(candidate)
    return kept


@dataclass(frozen=True)
class SimplicialComplex:
    """
    A simplicial complex given by its vertex name table and facets

    The facet list is an antichain kept in canonical order, so two complexes
    are equal exactly when their vertex tables and facet lists are equal.
    No facets means the void complex; a single empty facet is the
    irrelevant complex.
    """

    vertex_names: Tuple[str, ...]
    facets: Tuple[Face, ...] = ()

    def __post_init__(self):
        names = tuple(self.vertex_names)
        if len(set(names)) != len(names):
            duplicates = sorted({n for n in names if names.count(n) > 1})
            raise ComplexError(f"Duplicate vertex names: {duplicates}")

        faces = [frozenset(f) for f in self.facets]
        for face in faces:
            for v in face:
                if not isinstance(v, int) or v < 0 or v >= len(names):
                    raise ComplexError(
                        f"Face index {v} out of range for {len(names)} vertices"
                    )

        object.__setattr__(self, 'vertex_names', names)
        object.__setattr__(self, 'facets', tuple(maximal_sets(faces)))

    @classmethod
    def from_facets(cls, names: Sequence[str], faces: Iterable[Iterable[int]]) -> 'SimplicialComplex':
        """
        Build the complex generated by the given faces

        Args:
            names: Vertex names
            faces: Generating faces as vertex index collections

        Returns:
            Complex with non-maximal faces pruned and facets canonically ordered
        """
        return cls(tuple(names), tuple(frozenset(f) for f in faces))

    @classmethod
    def from_named_facets(cls, names: Sequence[str], faces: Iterable[Iterable[str]]) -> 'SimplicialComplex':
        """Build a complex from faces listed by vertex name"""
        index = {name: i for i, name in enumerate(names)}
        resolved = []
        for face in faces:
            try:
                resolved.append(frozenset(index[v] for v in face))
            except KeyError as e:
                raise ComplexError(f"Unknown vertex name {e.args[0]!r}") from None
        return cls.from_facets(names, resolved)

    @classmethod
    def simplex(cls, names: Sequence[str]) -> 'SimplicialComplex':
        """Full simplex on the given vertices"""
        return cls.from_facets(names, [range(len(names))])

    @classmethod
    def void(cls, names: Sequence[str]) -> 'SimplicialComplex':
        return cls.from_facets(names, [])

    @classmethod
    def irrelevant(cls, names: Sequence[str]) -> 'SimplicialComplex':
        return cls.from_facets(names, [()])

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    @property
    def ground_set(self) -> Face:
        return frozenset(range(self.num_vertices))

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_irrelevant(self) -> bool:
        return self.facets == (frozenset(),)

    @property
    def is_full_simplex(self) -> bool:
        return self.facets == (self.ground_set,)

    @property
    def dimension(self) -> Optional[int]:
        """Dimension, or None for the void complex"""
        if self.is_void:
            return None
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    @property
    def used_vertices(self) -> Face:
        return frozenset().union(*self.facets) if self.facets else frozenset()

    @cached_property
    def face_set(self) -> FrozenSet[Face]:
        """Every face of the complex, the empty face included"""
        faces = set()
        for facet in self.facets:
            members = sorted(facet)
            for size in range(len(members) + 1):
                faces.update(frozenset(c) for c in itertools.combinations(members, size))
        return frozenset(faces)

    def faces(self) -> Iterator[Face]:
        """Iterate over all faces in canonical order"""
        return iter(sorted(self.face_set, key=face_sort_key))

    def contains_face(self, face: Iterable[int]) -> bool:
        face = frozenset(face)
        return any(face <= facet for facet in self.facets)

    def f_vector(self) -> List[int]:
        """Face counts by size; entry k counts faces with k vertices"""
        if self.is_void:
            return []
        counts = [0] * (self.dimension + 2)
        for face in self.face_set:
            counts[len(face)] += 1
        return counts

    def reduced_euler_characteristic(self) -> int:
        """Sum over faces of (-1)^dim, the empty face counting -1"""
        return sum((-1) ** (size + 1) * count for size, count in enumerate(self.f_vector()))

    def named_facets(self) -> FrozenSet[FrozenSet[str]]:
        """Facets as sets of vertex names, for label-based comparison"""
        return frozenset(frozenset(self.vertex_names[v] for v in f) for f in self.facets)

    def rename(self, mapping: Dict[str, str]) -> 'SimplicialComplex':
        """Rename vertices, keeping the vertex order"""
        return SimplicialComplex(tuple(mapping.get(n, n) for n in self.vertex_names), self.facets)

    def canonical_key(self) -> Tuple[int, Tuple[int, ...]]:
        """Vertex count plus sorted facet bitmasks; the memoization key"""
        masks = sorted(sum(1 << v for v in f) for f in self.facets)
        return (self.num_vertices, tuple(masks))

    def __str__(self) -> str:
        if self.is_void:
            return "<void>"
        rendered = []
        for facet in self.facets:
            rendered.append("{" + ",".join(self.vertex_names[v] for v in sorted(facet)) + "}")
        return "<" + ", ".join(rendered) + ">"


@dataclass(frozen=True)
class ExpansionVector:
    """Positive multiplicity per vertex (the alpha of an expansion)"""

    multiplicities: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        values = tuple(self.multiplicities)
        for i, s in enumerate(values):
            if isinstance(s, bool) or not isinstance(s, int):
                raise ComplexError(f"Multiplicity {i} is not an integer: {s!r}")
            if s < 1:
                raise ComplexError(f"Multiplicity {i} must be >= 1, got {s}")
        object.__setattr__(self, 'multiplicities', values)

    @classmethod
    def ones(cls, n: int) -> 'ExpansionVector':
        return cls((1,) * n)

    @classmethod
    def uniform(cls, n: int, s: int) -> 'ExpansionVector':
        return cls((s,) * n)

    @classmethod
    def delta(cls, n: int, i: int) -> 'ExpansionVector':
        """The vector 1 + delta_i"""
        if not 0 <= i < n:
            raise ComplexError(f"Vertex index {i} out of range for {n} vertices")
        return cls(tuple(2 if j == i else 1 for j in range(n)))

    @classmethod
    def parse(cls, text: str) -> 'ExpansionVector':
        """Parse a comma separated list such as '2,1,1'"""
        try:
            values = tuple(int(part) for part in text.split(',') if part.strip())
        except ValueError:
            raise ComplexError(f"Cannot parse expansion vector {text!r}") from None
        return cls(values)

    def __len__(self) -> int:
        return len(self.multiplicities)

    def __getitem__(self, i: int) -> int:
        return self.multiplicities[i]

    def __iter__(self):
        return iter(self.multiplicities)

    def plus_delta(self, i: int) -> 'ExpansionVector':
        if not 0 <= i < len(self):
            raise ComplexError(f"Vertex index {i} out of range for {len(self)} vertices")
        values = list(self.multiplicities)
        values[i] += 1
        return ExpansionVector(tuple(values))

    def offsets(self) -> List[int]:
        """Index of the first copy of each base vertex in X^alpha"""
        return list(itertools.accumulate(self.multiplicities, initial=0))[:-1]

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    def __str__(self) -> str:
        return ",".join(str(s) for s in self.multiplicities)


@dataclass(frozen=True)
class ExpandedVertex:
    """A vertex x_{ij} of X^alpha: copy j (from 1) of base vertex i"""

    base: VertexId
    copy: int

    def name(self, base_names: Sequence[str]) -> str:
        return f"{base_names[self.base]}_{self.copy}"


def expansion_vertices(alpha: ExpansionVector) -> List[ExpandedVertex]:
    """Vertices of X^alpha in canonical (base-major, copy-minor) order"""
    return [ExpandedVertex(i, j) for i, s in enumerate(alpha) for j in range(1, s + 1)]


def expanded_names(names: Sequence[str], alpha: ExpansionVector) -> Tuple[str, ...]:
    """Vertex name table of X^alpha"""
    if len(names) != len(alpha):
        raise ComplexError(
            f"Expansion vector has length {len(alpha)}, expected {len(names)}"
        )
    return tuple(v.name(names) for v in expansion_vertices(alpha))


def expand(delta: SimplicialComplex, alpha: ExpansionVector) -> SimplicialComplex:
    """
    Expansion of a complex with respect to alpha

    Args:
        delta: Complex on X
        alpha: One positive multiplicity per vertex of X

    Returns:
        The expanded complex on X^alpha
    """
    names = expanded_names(delta.vertex_names, alpha)
    if delta.is_void or delta.is_irrelevant:
        logger.warning(f"Expanding degenerate complex {delta}; structure is kept as is")

    offsets = alpha.offsets()
    faces = []
    for facet in delta.facets:
        members = sorted(facet)
        choices = [range(offsets[v], offsets[v] + alpha[v]) for v in members]
        faces.extend(frozenset(pick) for pick in itertools.product(*choices))
    return SimplicialComplex.from_facets(names, faces)


def complement(delta: SimplicialComplex) -> SimplicialComplex:
    """Complex generated by the complements of the facets, same vertex table"""
    if delta.is_void:
        raise ComplexError("Complement of the void complex is undefined")
    ground = delta.ground_set
    return SimplicialComplex.from_facets(delta.vertex_names, [ground - f for f in delta.facets])


def alexander_dual(delta: SimplicialComplex) -> SimplicialComplex:
    """
    Alexander dual {X \\ F : F not a face}

    The facets of the dual are the complements of the minimal non-faces.
    The full simplex has no non-faces, so its dual is the void complex.
    """
    from ideals import minimal_transversals

    if delta.is_full_simplex:
        logger.warning("Alexander dual of the full simplex is the void complex")
        return SimplicialComplex.void(delta.vertex_names)

    ground = delta.ground_set
    # A set is a non-face iff it meets the complement of every facet
    non_faces = minimal_transversals([ground - f for f in delta.facets])
    return SimplicialComplex.from_facets(delta.vertex_names, [ground - n for n in non_faces])


def _check_vertices(delta: SimplicialComplex, vertices: Iterable[int]) -> Face:
    vertices = frozenset(vertices)
    for v in vertices:
        if not 0 <= v < delta.num_vertices:
            raise ComplexError(f"Vertex index {v} out of range for {delta.num_vertices} vertices")
    return vertices


def link(delta: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """
    Link of a face: {G : G and F disjoint, G union F in delta}

    Args:
        delta: Complex
        face: A face of delta

    Returns:
        The link on the same vertex table
    """
    face = _check_vertices(delta, face)
    if not delta.contains_face(face):
        raise ComplexError(f"{sorted(face)} is not a face of {delta}")
    return SimplicialComplex.from_facets(
        delta.vertex_names,
        [f - face for f in delta.facets if face <= f],
    )


def deletion(delta: SimplicialComplex, vertex: VertexId) -> SimplicialComplex:
    """Faces avoiding the vertex, on the same vertex table"""
    _check_vertices(delta, [vertex])
    return SimplicialComplex.from_facets(delta.vertex_names, [f - {vertex} for f in delta.facets])


def restriction(delta: SimplicialComplex, subset: Iterable[int]) -> SimplicialComplex:
    """Faces contained in the subset, on the same vertex table"""
    subset = _check_vertices(delta, subset)
    return SimplicialComplex.from_facets(delta.vertex_names, [f & subset for f in delta.facets])


def pure_skeleton(delta: SimplicialComplex, i: int) -> SimplicialComplex:
    """Complex generated by all i-dimensional faces"""
    if delta.is_void:
        raise ComplexError("Pure skeleton of the void complex is undefined")
    if not -1 <= i <= delta.dimension:
        raise ComplexError(f"Skeleton dimension {i} outside [-1, {delta.dimension}]")
    faces = set()
    for facet in delta.facets:
        if len(facet) > i:
            faces.update(itertools.combinations(sorted(facet), i + 1))
    return SimplicialComplex.from_facets(delta.vertex_names, faces)


def verify_epsilon_lemma(delta: SimplicialComplex, beta: ExpansionVector, i: VertexId) -> bool:
    """
    Check that (delta^beta)^(1 + delta_{i k_i}) maps onto delta^(beta + delta_i)

    The relabeling sends x_{rs1} to x_{rs} and the extra copy x_{i k_i 2}
    to x_{i (k_i + 1)}; the check passes when it carries the facet set of the
    first complex bijectively onto the facet set of the second.

    Args:
        delta: Base complex
        beta: Expansion vector
        i: Base vertex receiving the extra copy

    Returns:
        True when the relabeling is a facet bijection
    """
    if not 0 <= i < delta.num_vertices:
        raise ComplexError(f"Vertex index {i} out of range for {delta.num_vertices} vertices")

    alpha = beta.plus_delta(i)
    inner = expand(delta, beta)
    inner_vertices = expansion_vertices(beta)
    last_copy = beta.offsets()[i] + beta[i] - 1  # index of x_{i k_i} in X^beta
    gamma = ExpansionVector.delta(inner.num_vertices, last_copy)
    outer = expand(inner, gamma)
    target = expand(delta, alpha)

    alpha_offsets = alpha.offsets()
    phi = []
    for vertex in expansion_vertices(gamma):
        middle = inner_vertices[vertex.base]
        if vertex.copy == 1:
            phi.append(alpha_offsets[middle.base] + middle.copy - 1)
        else:
            phi.append(alpha_offsets[i] + beta[i])

    if sorted(phi) != list(range(target.num_vertices)):
        return False
    image = {frozenset(phi[v] for v in f) for f in outer.facets}
    return len(image) == len(outer.facets) and image == set(target.facets)
