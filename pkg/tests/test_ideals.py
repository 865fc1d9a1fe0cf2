"""
Unit Tests for Ideals
"""

import pytest
from hypothesis import given, settings, strategies as st

from complex_core import ExpansionVector, SimplicialComplex, alexander_dual, expand
from homology import Decision, ModuleKind, hochster_betti
from ideals import (
    IdealError,
    LinearQuotientsCertificate,
    MonomialIdeal,
    alexander_dual_ideal,
    betti_from_linear_quotients,
    certificate_from_order,
    complex_of_ideal,
    dual_j,
    expand_j_generators,
    expansion_order,
    facet_ideal,
    has_linear_resolution,
    intersect_primes,
    linear_quotients_order,
    minimal_transversals,
    stanley_reisner_ideal,
)


X3 = ('x1', 'x2', 'x3')


@pytest.fixture
def path_complex():
    return SimplicialComplex.from_facets(X3, [[0, 1], [1, 2]])


@pytest.fixture
def path_ideal():
    """(x1x2, x2x3)"""
    return MonomialIdeal.from_named_generators(X3, [['x1', 'x2'], ['x2', 'x3']])


@st.composite
def ideals(draw, max_variables=5, max_generators=5):
    n = draw(st.integers(min_value=1, max_value=max_variables))
    supports = draw(st.lists(
        st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1),
        min_size=1, max_size=max_generators,
    ))
    return MonomialIdeal(tuple(f"x{i}" for i in range(1, n + 1)), tuple(supports))


# Ideal construction and membership
def test_generators_are_minimalized():
    ideal = MonomialIdeal(X3, (frozenset({0}), frozenset({0, 1}), frozenset({1, 2})))
    assert ideal.generators == (frozenset({0}), frozenset({1, 2}))
    assert str(ideal) == "(x1, x2*x3)"


def test_zero_ideal():
    ideal = MonomialIdeal(X3)
    assert ideal.is_zero
    assert str(ideal) == "(0)"


def test_unit_monomial_rejected():
    with pytest.raises(IdealError):
        MonomialIdeal(X3, (frozenset(),))


def test_unknown_variable_rejected():
    with pytest.raises(IdealError):
        MonomialIdeal.from_named_generators(X3, [['x4']])


def test_membership(path_ideal):
    assert path_ideal.contains({0: 3, 1: 1})
    assert not path_ideal.contains({0: 2, 2: 5})


def test_canonical_key_is_stable(path_ideal):
    same = MonomialIdeal.from_named_generators(X3, [['x3', 'x2'], ['x2', 'x1']])
    assert same.canonical_key() == path_ideal.canonical_key()


# Facet, Stanley-Reisner and dual ideals
def test_minimal_transversals():
    assert minimal_transversals([{0, 1}, {1, 2}]) == [frozenset({1}), frozenset({0, 2})]
    assert minimal_transversals([]) == [frozenset()]
    assert minimal_transversals([{0}, set()]) == []


def test_facet_ideal(path_complex, path_ideal):
    assert facet_ideal(path_complex) == path_ideal
    with pytest.raises(IdealError):
        facet_ideal(SimplicialComplex.irrelevant(X3))


def test_stanley_reisner_ideal(path_complex):
    assert stanley_reisner_ideal(path_complex).named_generators() == {frozenset({'x1', 'x3'})}
    assert stanley_reisner_ideal(SimplicialComplex.simplex(X3)).is_zero


def test_complex_of_ideal(path_complex):
    assert complex_of_ideal(stanley_reisner_ideal(path_complex)) == path_complex
    assert complex_of_ideal(MonomialIdeal(X3)) == SimplicialComplex.simplex(X3)


def test_alexander_dual_ideal(path_ideal):
    dual = alexander_dual_ideal(path_ideal)
    assert dual.named_generators() == {frozenset({'x2'}), frozenset({'x1', 'x3'})}
    assert dual == intersect_primes(path_ideal.generators, X3)
    with pytest.raises(IdealError):
        alexander_dual_ideal(MonomialIdeal(X3))


def test_dual_j(path_complex):
    assert dual_j(path_complex).named_generators() == {frozenset({'x2'}), frozenset({'x1', 'x3'})}


def test_expand_j_generators():
    ideal = MonomialIdeal.from_named_generators(('x1', 'x2'), [['x1'], ['x2']])
    expanded = expand_j_generators(ideal, ExpansionVector((2, 1)))
    assert expanded.variables == ('x1_1', 'x1_2', 'x2_1')
    assert expanded.named_generators() == {frozenset({'x1_1', 'x1_2'}), frozenset({'x2_1'})}
    with pytest.raises(IdealError):
        expand_j_generators(ideal, ExpansionVector((2, 1, 1)))


@settings(max_examples=60, deadline=None)
@given(ideals())
def test_dual_matches_prime_intersection(ideal):
    assert alexander_dual_ideal(ideal) == intersect_primes(ideal.generators, ideal.variables)


@settings(max_examples=60, deadline=None)
@given(ideals())
def test_stanley_reisner_correspondence(ideal):
    assert stanley_reisner_ideal(complex_of_ideal(ideal)) == ideal


@settings(max_examples=40, deadline=None)
@given(ideals(max_variables=4), st.data())
def test_expanded_j_is_dual_of_expanded_facet_ideal(ideal, data):
    """Expansion commutes with taking J"""
    delta = SimplicialComplex.from_facets(ideal.variables, ideal.generators)
    alpha = ExpansionVector(tuple(
        data.draw(st.integers(min_value=1, max_value=2)) for _ in range(delta.num_vertices)
    ))
    assert dual_j(expand(delta, alpha)) == expand_j_generators(dual_j(delta), alpha)


@settings(max_examples=40, deadline=None)
@given(ideals(max_variables=4))
def test_stanley_reisner_of_dual(ideal):
    """I of the Alexander dual complex is the Alexander dual ideal"""
    delta = complex_of_ideal(ideal)
    if delta.is_full_simplex or delta.is_void:
        return
    assert stanley_reisner_ideal(alexander_dual(delta)) == alexander_dual_ideal(ideal)


# Orders of linear quotients and their Betti numbers
def test_path_ideal_has_linear_quotients(path_ideal):
    search = linear_quotients_order(path_ideal)
    assert search.is_yes
    assert search.certificate.sets == (frozenset(), frozenset({0}))
    assert search.certificate.projdim() == 1


def test_disjoint_edges_have_no_linear_quotients():
    ideal = MonomialIdeal.from_named_generators(
        ('x1', 'x2', 'x3', 'x4'), [['x1', 'x2'], ['x3', 'x4']]
    )
    assert linear_quotients_order(ideal).decision == Decision.NO
    assert certificate_from_order(ideal, [0, 1]) is None


def test_generator_cap():
    ideal = MonomialIdeal(tuple(f"x{i}" for i in range(1, 5)),
                          tuple(frozenset({v}) for v in range(4)))
    assert linear_quotients_order(ideal, max_generators=3).decision == Decision.UNDECIDED


def test_bad_certificate_rejected(path_ideal):
    with pytest.raises(IdealError):
        LinearQuotientsCertificate(path_ideal, (0, 1), (frozenset(), frozenset({2})))
    with pytest.raises(IdealError):
        LinearQuotientsCertificate(path_ideal, (0, 0), (frozenset(), frozenset()))


def test_betti_numbers_from_certificate(path_ideal):
    certificate = linear_quotients_order(path_ideal).certificate
    table = betti_from_linear_quotients(certificate, path_ideal)
    assert table.as_dict() == {(0, 2): 2, (1, 3): 1}
    assert has_linear_resolution(table)


def test_linear_resolution_check():
    mixed = MonomialIdeal.from_named_generators(X3, [['x2'], ['x1', 'x3']])
    assert not has_linear_resolution(hochster_betti(mixed))


def test_expansion_order_example():
    delta = SimplicialComplex.from_facets(('x1', 'x2'), [[0, 1]])
    certificate = linear_quotients_order(facet_ideal(delta)).certificate
    induced = expansion_order(delta, certificate, ExpansionVector((2, 2)))
    named = [
        frozenset(induced.ideal.variables[v] for v in g) for g in induced.ordered_generators
    ]
    assert named == [
        frozenset({'x1_1', 'x2_1'}), frozenset({'x1_1', 'x2_2'}),
        frozenset({'x1_2', 'x2_1'}), frozenset({'x1_2', 'x2_2'}),
    ]
    assert [len(s) for s in induced.sets] == [0, 1, 1, 2]


@settings(max_examples=40, deadline=None)
@given(ideals(max_variables=5, max_generators=4))
def test_certificate_betti_numbers_match_hochster(ideal):
    search = linear_quotients_order(ideal)
    if search.is_yes:
        assert betti_from_linear_quotients(search.certificate) == \
            hochster_betti(ideal, kind=ModuleKind.IDEAL)


@settings(max_examples=30, deadline=None)
@given(ideals(max_variables=4, max_generators=3), st.data())
def test_expansion_preserves_linear_quotients(ideal, data):
    delta = SimplicialComplex.from_facets(ideal.variables, ideal.generators)
    search = linear_quotients_order(facet_ideal(delta))
    if not search.is_yes:
        return
    alpha = ExpansionVector(tuple(
        data.draw(st.integers(min_value=1, max_value=2)) for _ in range(delta.num_vertices)
    ))
    induced = expansion_order(delta, search.certificate, alpha)
    assert induced.ideal == facet_ideal(expand(delta, alpha))


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
