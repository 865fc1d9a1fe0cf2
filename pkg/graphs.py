"""
Graphs Module - Simple graphs and their expansions
Independence complexes, the two graph expansions, chordality by maximum
cardinality search, vertex duplication and closed-twin removal, edge ideals
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from complex_core import ExpansionVector, SimplicialComplex, VertexId, expanded_names
from ideals import MonomialIdeal


logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations"""


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on named vertices

    Edges are index pairs (smaller first) in sorted order; loops and
    repeated edges are rejected.
    """

    vertex_names: Tuple[str, ...]
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        names = tuple(self.vertex_names)
        if len(set(names)) != len(names):
            raise GraphError(f"Duplicate vertex names in {names}")
        normalized = set()
        for u, v in self.edges:
            for w in (u, v):
                if not isinstance(w, int) or not 0 <= w < len(names):
                    raise GraphError(f"Edge endpoint {w} out of range for {len(names)} vertices")
            if u == v:
                raise GraphError(f"Loop at vertex {names[u]}")
            edge = (min(u, v), max(u, v))
            if edge in normalized:
                raise GraphError(f"Repeated edge {names[edge[0]]}-{names[edge[1]]}")
            normalized.add(edge)
        object.__setattr__(self, 'vertex_names', names)
        object.__setattr__(self, 'edges', tuple(sorted(normalized)))

    @classmethod
    def from_edges(cls, names: Sequence[str], edges: Iterable[Edge]) -> 'Graph':
        """Build a graph, silently merging repeated edges"""
        unique = {(min(u, v), max(u, v)) for u, v in edges}
        return cls(tuple(names), tuple(unique))

    @classmethod
    def from_named_edges(cls, names: Sequence[str], edges: Iterable[Tuple[str, str]]) -> 'Graph':
        index = {name: i for i, name in enumerate(names)}
        resolved = []
        for edge in edges:
            try:
                u, v = (index[w] for w in edge)
            except KeyError as e:
                raise GraphError(f"Unknown vertex name {e.args[0]!r}") from None
            except ValueError:
                raise GraphError(f"Edge {edge!r} does not have two endpoints") from None
            resolved.append((u, v))
        return cls(tuple(names), tuple(resolved))

    @classmethod
    def complete(cls, names: Sequence[str]) -> 'Graph':
        return cls(tuple(names), tuple(itertools.combinations(range(len(names)), 2)))

    @classmethod
    def cycle(cls, names: Sequence[str]) -> 'Graph':
        n = len(names)
        return cls.from_edges(names, [(i, (i + 1) % n) for i in range(n)])

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_names)

    def _adjacency(self) -> Dict[int, FrozenSet[int]]:
        adjacency = {v: set() for v in range(self.num_vertices)}
        for u, v in self.edges:
            adjacency[u].add(v)
            adjacency[v].add(u)
        return {v: frozenset(ns) for v, ns in adjacency.items()}

    def neighbors(self, v: VertexId) -> FrozenSet[int]:
        self._check_vertex(v)
        return self._adjacency()[v]

    def closed_neighborhood(self, v: VertexId) -> FrozenSet[int]:
        return self.neighbors(v) | {v}

    def _check_vertex(self, v: VertexId):
        if not isinstance(v, int) or not 0 <= v < self.num_vertices:
            raise GraphError(f"Vertex index {v} out of range for {self.num_vertices} vertices")

    def named_edges(self) -> FrozenSet[FrozenSet[str]]:
        return frozenset(frozenset((self.vertex_names[u], self.vertex_names[v])) for u, v in self.edges)

    def same_as(self, other: 'Graph') -> bool:
        """Equality as labelled graphs, ignoring vertex order"""
        return (set(self.vertex_names) == set(other.vertex_names)
                and self.named_edges() == other.named_edges())

    def rename(self, mapping: Dict[str, str]) -> 'Graph':
        return Graph(tuple(mapping.get(n, n) for n in self.vertex_names), self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.num_vertices))
        g.add_edges_from(self.edges)
        return g

    def __str__(self) -> str:
        rendered = ", ".join(f"{self.vertex_names[u]}-{self.vertex_names[v]}" for u, v in self.edges)
        return f"Graph[{', '.join(self.vertex_names)}; {rendered}]"


def independence_complex(graph: Graph) -> SimplicialComplex:
    """Complex of independent sets; facets are the maximal independent sets"""
    if graph.num_vertices == 0:
        return SimplicialComplex.irrelevant(graph.vertex_names)
    # Maximal independent sets of G are the maximal cliques of its complement
    cliques = nx.find_cliques(nx.complement(graph.to_networkx()))
    return SimplicialComplex.from_facets(graph.vertex_names, cliques)


def _check_alpha(graph: Graph, alpha: ExpansionVector):
    if len(alpha) != graph.num_vertices:
        raise GraphError(
            f"Expansion vector has length {len(alpha)}, expected {graph.num_vertices}"
        )


def graph_expand(graph: Graph, alpha: ExpansionVector) -> Graph:
    """
    G^alpha: every copy of x_i is joined to every copy of each neighbor x_j;
    copies of one vertex stay non-adjacent
    """
    _check_alpha(graph, alpha)
    offsets = alpha.offsets()
    edges = []
    for u, v in graph.edges:
        for r in range(alpha[u]):
            for s in range(alpha[v]):
                edges.append((offsets[u] + r, offsets[v] + s))
    return Graph(expanded_names(graph.vertex_names, alpha), tuple(edges))


def graph_expand_hat(graph: Graph, alpha: ExpansionVector) -> Graph:
    """G^alpha plus a clique on the copies of every vertex"""
    expanded = graph_expand(graph, alpha)
    offsets = alpha.offsets()
    edges = list(expanded.edges)
    for i, s in enumerate(alpha):
        edges.extend(itertools.combinations(range(offsets[i], offsets[i] + s), 2))
    return Graph(expanded.vertex_names, tuple(edges))


def complement_graph(graph: Graph) -> Graph:
    present = set(graph.edges)
    edges = [e for e in itertools.combinations(range(graph.num_vertices), 2) if e not in present]
    return Graph(graph.vertex_names, tuple(edges))


def maximum_cardinality_search(graph: Graph) -> List[VertexId]:
    """
    Visit order of maximum cardinality search

    Each step visits an unvisited vertex with the most visited neighbors,
    ties broken by smallest index.
    """
    adjacency = graph._adjacency()
    weight = {v: 0 for v in range(graph.num_vertices)}
    visited: List[VertexId] = []
    unvisited = set(range(graph.num_vertices))
    while unvisited:
        v = max(sorted(unvisited), key=lambda u: weight[u])
        unvisited.remove(v)
        visited.append(v)
        for u in adjacency[v] & unvisited:
            weight[u] += 1
    return visited


def is_perfect_elimination_order(graph: Graph, order: Sequence[VertexId]) -> bool:
    """Each vertex's neighbors later in the order must form a clique"""
    adjacency = graph._adjacency()
    position = {v: k for k, v in enumerate(order)}
    for v in order:
        later = [u for u in adjacency[v] if position[u] > position[v]]
        for a, b in itertools.combinations(later, 2):
            if b not in adjacency[a]:
                return False
    return True


def perfect_elimination_order(graph: Graph) -> List[VertexId]:
    """Candidate order: maximum cardinality search visit order, reversed"""
    return list(reversed(maximum_cardinality_search(graph)))


def is_chordal(graph: Graph) -> bool:
    """Chordal iff the reversed search order passes the explicit check"""
    return is_perfect_elimination_order(graph, perfect_elimination_order(graph))


def is_co_chordal(graph: Graph) -> bool:
    return is_chordal(complement_graph(graph))


def _fresh_name(names: Sequence[str], base: str) -> str:
    candidate = base + "'"
    while candidate in names:
        candidate += "'"
    return candidate


def duplicate_vertex(graph: Graph, x: VertexId) -> Graph:
    """
    Add x' joined to x and every neighbor of x

    The new vertex is appended to the vertex table as x + "'".
    """
    graph._check_vertex(x)
    names = graph.vertex_names
    new = len(names)
    edges = list(graph.edges)
    edges.extend((u, new) for u in sorted(graph.closed_neighborhood(x)))
    return Graph(names + (_fresh_name(names, names[x]),), tuple(edges))


def closed_twins(graph: Graph) -> List[Tuple[VertexId, VertexId]]:
    """All pairs x < y with N[x] = N[y]"""
    closed = {v: graph.closed_neighborhood(v) for v in range(graph.num_vertices)}
    return [
        (x, y) for x, y in itertools.combinations(range(graph.num_vertices), 2)
        if closed[x] == closed[y]
    ]


def remove_vertex(graph: Graph, x: VertexId) -> Graph:
    """Delete x and its incident edges; later indices shift down by one"""
    graph._check_vertex(x)
    names = graph.vertex_names[:x] + graph.vertex_names[x + 1:]

    def shift(v: int) -> int:
        return v - 1 if v > x else v

    edges = [(shift(u), shift(v)) for u, v in graph.edges if x not in (u, v)]
    return Graph(names, tuple(edges))


def edge_ideal(graph: Graph) -> MonomialIdeal:
    """(x_i x_j : {x_i, x_j} an edge)"""
    if not graph.edges:
        raise GraphError("Edge ideal of an edgeless graph is the zero ideal")
    return MonomialIdeal(graph.vertex_names, tuple(frozenset(e) for e in graph.edges))
