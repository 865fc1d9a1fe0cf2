"""
Unit Tests for Homology
Reduced homology, Hochster's formula and the combinatorial properties
"""

from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from complex_core import SimplicialComplex
from homology import (
    GF2,
    QQ,
    BettiTable,
    Decision,
    FieldSpec,
    HomologyError,
    ModuleKind,
    hochster_betti,
    is_cohen_macaulay,
    is_sequentially_cm,
    is_shellable,
    is_vertex_decomposable,
    lcm_lattice,
    reduced_homology,
)
from ideals import MonomialIdeal, stanley_reisner_ideal


def names(n):
    return [f"x{i}" for i in range(1, n + 1)]


@pytest.fixture
def projective_plane():
    """Six-vertex triangulation of the real projective plane"""
    triangles = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ]
    return SimplicialComplex.from_facets(names(6), [[v - 1 for v in t] for t in triangles])


@pytest.fixture
def two_edges():
    return SimplicialComplex.from_facets(names(4), [[0, 1], [2, 3]])


@pytest.fixture
def path_ideal():
    """(x1x2, x2x3)"""
    return MonomialIdeal(tuple(names(3)), (frozenset({0, 1}), frozenset({1, 2})))


@st.composite
def complexes(draw, max_vertices=5, max_faces=5):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    faces = draw(st.lists(
        st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1),
        min_size=1, max_size=max_faces,
    ))
    return SimplicialComplex.from_facets(names(n), faces)


@st.composite
def ideals(draw, max_variables=5, max_generators=5):
    n = draw(st.integers(min_value=1, max_value=max_variables))
    supports = draw(st.lists(
        st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1),
        min_size=1, max_size=max_generators,
    ))
    return MonomialIdeal(tuple(names(n)), tuple(frozenset(s) for s in supports))


# Coefficient field parsing
def test_parse_codes():
    assert FieldSpec.parse('q') == QQ
    assert FieldSpec.parse('F2') == GF2
    assert FieldSpec.parse('f7').characteristic == 7
    assert str(FieldSpec.parse('f3')) == 'GF(3)'
    assert QQ.code == 'q'


@pytest.mark.parametrize('text', ['f4', 'f1', 'z', 'f'])
def test_rejects_bad_fields(text):
    with pytest.raises(HomologyError):
        FieldSpec.parse(text)


# Reduced simplicial homology
def test_triangle_boundary_is_a_circle():
    delta = SimplicialComplex.from_facets(names(3), [[0, 1], [1, 2], [0, 2]])
    assert reduced_homology(delta).as_dict() == {1: 1}


def test_simplex_is_acyclic():
    assert reduced_homology(SimplicialComplex.simplex(names(4))).is_acyclic


def test_irrelevant_complex():
    assert reduced_homology(SimplicialComplex.irrelevant(names(2))).as_dict() == {-1: 1}


def test_disconnected_points():
    delta = SimplicialComplex.from_facets(names(3), [[0], [1], [2]])
    assert reduced_homology(delta).as_dict() == {0: 2}


def test_projective_plane_depends_on_field(projective_plane):
    assert reduced_homology(projective_plane, QQ).is_acyclic
    assert reduced_homology(projective_plane, GF2).as_dict() == {1: 1, 2: 1}


def test_void_is_rejected():
    with pytest.raises(HomologyError):
        reduced_homology(SimplicialComplex.void(names(2)))


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_euler_poincare(delta):
    """Alternating sum of homology equals the reduced Euler characteristic"""
    for field in (QQ, GF2):
        assert reduced_homology(delta, field).euler_characteristic() == \
            delta.reduced_euler_characteristic()


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=4))
def test_no_torsion_on_four_vertices(delta):
    """Field dependence needs at least six vertices"""
    assert reduced_homology(delta, QQ).as_dict() == reduced_homology(delta, GF2).as_dict()


# Betti table bookkeeping
def test_kind_conversion():
    table = BettiTable(ModuleKind.QUOTIENT, ((0, 0, 1), (1, 2, 2), (2, 3, 1)))
    ideal = table.to_ideal()
    assert ideal.entries == ((0, 2, 2), (1, 3, 1))
    assert ideal.to_quotient() == table


def test_invariants():
    table = BettiTable(ModuleKind.QUOTIENT, ((0, 0, 1), (1, 2, 2), (2, 3, 1)))
    assert table.total_betti() == [1, 2, 1]
    assert table.projdim() == 2
    assert table.regularity() == 1
    assert 'total:' in table.format_table()


def test_zero_entries_dropped_and_merged():
    table = BettiTable(ModuleKind.IDEAL, ((0, 2, 1), (0, 2, 1), (1, 3, 0)))
    assert table.entries == ((0, 2, 2),)


def test_empty_table():
    table = BettiTable(ModuleKind.IDEAL)
    assert table.is_zero
    assert table.format_table() == "(zero)"
    with pytest.raises(HomologyError):
        table.projdim()


def test_negative_entries_rejected():
    with pytest.raises(HomologyError):
        BettiTable(ModuleKind.IDEAL, ((0, 1, -1),))


# Betti numbers from Hochster's formula
def test_lcm_lattice():
    lattice = lcm_lattice([frozenset({0, 1}), frozenset({1, 2})])
    assert lattice == [frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 1, 2})]


def test_path_ideal(path_ideal):
    table = hochster_betti(path_ideal, QQ, ModuleKind.IDEAL)
    assert table.as_dict() == {(0, 2): 2, (1, 3): 1}
    quotient = hochster_betti(path_ideal, QQ, ModuleKind.QUOTIENT)
    assert quotient.total_betti() == [1, 2, 1]


@pytest.mark.parametrize('n', [1, 2, 3, 4, 5])
def test_koszul_complex(n):
    """The maximal ideal is resolved by the Koszul complex"""
    ideal = MonomialIdeal(tuple(names(n)), tuple(frozenset({v}) for v in range(n)))
    table = hochster_betti(ideal)
    assert table.as_dict() == {(i, i + 1): comb(n, i + 1) for i in range(n)}


def test_zero_ideal_rejected():
    with pytest.raises(HomologyError):
        hochster_betti(MonomialIdeal(tuple(names(2))))


def test_variable_cap(path_ideal):
    with pytest.raises(HomologyError):
        hochster_betti(path_ideal, max_variables=2)


def test_projective_plane_betti_numbers_depend_on_field(projective_plane):
    ideal = stanley_reisner_ideal(projective_plane)
    assert hochster_betti(ideal, QQ) != hochster_betti(ideal, GF2)


@settings(max_examples=40, deadline=None)
@given(complexes(max_vertices=5))
def test_cohen_macaulay_projective_dimension(delta):
    """pd S/I equals the codimension for Cohen-Macaulay complexes"""
    if delta.is_full_simplex or not is_cohen_macaulay(delta):
        return
    table = hochster_betti(stanley_reisner_ideal(delta), QQ, ModuleKind.QUOTIENT)
    assert table.projdim() == delta.num_vertices - delta.dimension - 1


@settings(max_examples=40, deadline=None)
@given(ideals())
def test_hochster_degree_bounds(ideal):
    """Nonzero rows sit between the least generator degree and the ambient size"""
    least = min(len(g) for g in ideal.generators)
    for i, j, _ in hochster_betti(ideal, QQ, ModuleKind.IDEAL).entries:
        assert least + i <= j <= ideal.num_variables
    for i, j, _ in hochster_betti(ideal, QQ, ModuleKind.QUOTIENT).entries:
        assert (i, j) == (0, 0) or least <= j <= ideal.num_variables


# Cohen-Macaulayness, shellability and vertex decomposability
def test_two_disjoint_edges(two_edges):
    assert not is_cohen_macaulay(two_edges)
    assert not is_sequentially_cm(two_edges)
    assert is_shellable(two_edges).decision == Decision.NO
    assert not is_vertex_decomposable(two_edges)


def test_triangle_boundary_is_cohen_macaulay_and_vertex_decomposable():
    delta = SimplicialComplex.from_facets(names(3), [[0, 1], [1, 2], [0, 2]])
    for field in (QQ, GF2):
        assert is_cohen_macaulay(delta, field)
    assert is_vertex_decomposable(delta)
    assert is_shellable(delta).is_yes


def test_path_is_shellable():
    delta = SimplicialComplex.from_facets(names(3), [[0, 1], [1, 2]])
    search = is_shellable(delta)
    assert search.is_yes
    assert len(search.order) == 2
    assert is_cohen_macaulay(delta)
    assert is_vertex_decomposable(delta)


def test_edge_plus_point_is_sequentially_cm():
    delta = SimplicialComplex.from_facets(names(3), [[0, 1], [2]])
    assert is_sequentially_cm(delta)
    assert not is_cohen_macaulay(delta)
    assert is_shellable(delta).is_yes


def test_projective_plane_cm_depends_on_field(projective_plane):
    assert is_cohen_macaulay(projective_plane, QQ)
    assert not is_cohen_macaulay(projective_plane, GF2)


def test_shelling_cap():
    delta = SimplicialComplex.from_facets(names(6), [[v] for v in range(6)])
    assert is_shellable(delta, max_facets=5).decision == Decision.UNDECIDED


def test_simplex_and_irrelevant_are_vertex_decomposable():
    assert is_vertex_decomposable(SimplicialComplex.simplex(names(3)))
    assert is_vertex_decomposable(SimplicialComplex.irrelevant(names(3)))


@settings(max_examples=60, deadline=None)
@given(complexes(max_vertices=5))
def test_property_hierarchy(delta):
    """vertex decomposable => shellable => sequentially Cohen-Macaulay"""
    shellable = is_shellable(delta).is_yes
    if is_vertex_decomposable(delta):
        assert shellable
    if shellable:
        assert is_sequentially_cm(delta, QQ)
        assert is_sequentially_cm(delta, GF2)
    if delta.is_pure() and is_sequentially_cm(delta):
        assert is_cohen_macaulay(delta)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
