"""
Random Instances Module - Seeded generators for the verification suites

All randomness comes from a random.Random (Mersenne Twister) instance seeded
with an integer, which produces the same stream on every platform.
"""

import random
from typing import List, Optional

from complex_core import ExpansionVector, SimplicialComplex
from graphs import Graph
from ideals import MonomialIdeal


EDGE_PROBABILITIES = (0.3, 0.5, 0.7)


def vertex_names(n: int) -> List[str]:
    return [f"x{i}" for i in range(1, n + 1)]


def random_complex(rng: random.Random, max_vertices: int, max_facets: int,
                   min_vertices: int = 1, pure_size: Optional[int] = None) -> SimplicialComplex:
    """
    Complex generated by random nonempty faces

    Args:
        rng: Seeded generator
        max_vertices: Upper bound on the vertex table size
        max_facets: Number of generating faces drawn (at most)
        min_vertices: Lower bound on the vertex table size
        pure_size: If set, every generating face has this many vertices

    Returns:
        A complex with at least one nonempty facet
    """
    n = rng.randint(min_vertices, max_vertices)
    if pure_size is not None:
        n = max(n, pure_size)
    count = rng.randint(1, max_facets)
    faces = []
    for _ in range(count):
        size = pure_size if pure_size is not None else rng.randint(1, n)
        faces.append(rng.sample(range(n), size))
    return SimplicialComplex.from_facets(vertex_names(n), faces)


def random_pure_complex(rng: random.Random, max_vertices: int, max_facets: int) -> SimplicialComplex:
    """Pure complex: all generating faces share one random size"""
    n = rng.randint(2, max_vertices)
    size = rng.randint(1, n)
    return random_complex(rng, n, max_facets, min_vertices=n, pure_size=size)


def random_nonpure_complex(rng: random.Random, max_vertices: int, max_facets: int) -> SimplicialComplex:
    """Complex with facets of at least two sizes, redrawn until nonpure"""
    if max_vertices < 3:
        raise ValueError(f"A nonpure complex needs at least 3 vertices, cap is {max_vertices}")
    while True:
        delta = random_complex(rng, max_vertices, max(max_facets, 2), min_vertices=3)
        if not delta.is_pure():
            return delta


def random_alpha(rng: random.Random, n: int, max_multiplicity: int, max_ambient: int) -> ExpansionVector:
    """
    Random expansion vector whose expanded ambient stays within the cap

    Entries are drawn from 1..max_multiplicity; if the total exceeds the cap
    they are first clipped to 2, then the largest entries are lowered to 1.
    """
    values = [rng.randint(1, max_multiplicity) for _ in range(n)]
    if sum(values) > max_ambient:
        values = [min(v, 2) for v in values]
    while sum(values) > max_ambient and any(v > 1 for v in values):
        values[values.index(max(values))] = 1
    return ExpansionVector(tuple(values))


def random_graph(rng: random.Random, max_vertices: int, min_vertices: int = 2) -> Graph:
    """Erdos-Renyi graph with edge probability drawn from EDGE_PROBABILITIES"""
    n = rng.randint(min_vertices, max_vertices)
    p = rng.choice(EDGE_PROBABILITIES)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(tuple(vertex_names(n)), tuple(edges))


def random_ideal(rng: random.Random, max_variables: int, max_generators: int) -> MonomialIdeal:
    """Ideal generated by random nonempty squarefree monomials (minimalized)"""
    n = rng.randint(2, max_variables)
    count = rng.randint(1, max_generators)
    supports = [frozenset(rng.sample(range(n), rng.randint(1, n))) for _ in range(count)]
    return MonomialIdeal(tuple(vertex_names(n)), tuple(supports))
