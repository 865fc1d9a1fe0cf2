"""
Unit Tests for the Verification Suites and the ExpansionVerifier
"""

import json
import random

import pytest
import yaml

import verification
from complex_core import ExpansionVector, SimplicialComplex, expand
from graphs import Graph, closed_twins, independence_complex, remove_vertex
from homology import GF2, QQ, ModuleKind, hochster_betti, is_cohen_macaulay
from ideals import LinearQuotientsCertificate, MonomialIdeal, dual_j, facet_ideal, linear_quotients_order
from random_instances import (
    random_alpha,
    random_complex,
    random_graph,
    random_ideal,
    random_nonpure_complex,
)
from serialization import complex_from_dict
from verification import (
    SUITES,
    ExpansionVerifier,
    SuiteCaps,
    SuiteReport,
    TrialResult,
    TrialStatus,
    UnknownSuiteError,
    run_trial,
    trial_seeds,
    verify_suite,
)


SMALL_CAPS = SuiteCaps(
    max_vertices=4,
    max_facets=4,
    max_graph_vertices=5,
    max_multiplicity=2,
    max_ambient=10,
    max_shelling_facets=8,
)


@pytest.fixture
def path_complex():
    return SimplicialComplex.from_facets(('x1', 'x2', 'x3'), [[0, 1], [1, 2]])


@pytest.fixture
def verifier(test_config):
    return ExpansionVerifier(test_config)


def failing_suite(rng, caps, instance):
    instance['complex'] = {'vertices': ['x1'], 'facets': [['x1']]}
    return TrialStatus.FAIL, "forced failure"


def raising_suite(rng, caps, instance):
    raise RuntimeError("boom")


# Seeded instance generators
def test_same_seed_same_instance():
    first = random_complex(random.Random(5), 6, 8)
    second = random_complex(random.Random(5), 6, 8)
    assert first == second


def test_alpha_respects_ambient_cap():
    rng = random.Random(11)
    for _ in range(50):
        alpha = random_alpha(rng, 6, 3, 10)
        assert alpha.total <= 10
        assert all(1 <= s <= 3 for s in alpha)


def test_generators_stay_within_caps():
    rng = random.Random(2)
    for _ in range(30):
        delta = random_complex(rng, 5, 4)
        assert 1 <= delta.num_vertices <= 5
        assert not delta.is_void and not delta.is_irrelevant
        graph = random_graph(rng, 6)
        assert 2 <= graph.num_vertices <= 6
        ideal = random_ideal(rng, 5, 6)
        assert not ideal.is_zero and len(ideal.generators) <= 6


def test_nonpure_complexes_are_nonpure():
    rng = random.Random(3)
    for _ in range(30):
        delta = random_nonpure_complex(rng, 5, 4)
        assert not delta.is_pure()
        assert 3 <= delta.num_vertices <= 5
    with pytest.raises(ValueError):
        random_nonpure_complex(rng, 2, 4)


# Worked instances of the statements the suites check
def test_dual_betti_example(path_complex):
    alpha = ExpansionVector((2, 1, 1))
    base = hochster_betti(dual_j(path_complex), QQ, ModuleKind.QUOTIENT)
    expanded = hochster_betti(dual_j(expand(path_complex, alpha)), QQ, ModuleKind.QUOTIENT)
    assert base.total_betti() == expanded.total_betti() == [1, 2, 1]


def test_pd_linear_example(path_complex):
    certificate = linear_quotients_order(facet_ideal(path_complex)).certificate
    assert certificate.projdim() == 1
    expanded = expand(path_complex, ExpansionVector.uniform(3, 2))
    pd = hochster_betti(facet_ideal(expanded), QQ, ModuleKind.IDEAL).projdim()
    assert pd == 1 * 2 + 2 * 1 == 4


def test_twin_removal_example():
    triangle = Graph.complete(('a', 'b', 'c'))
    assert closed_twins(triangle)
    edge = remove_vertex(triangle, 0)
    for field_spec in (QQ, GF2):
        assert is_cohen_macaulay(independence_complex(triangle), field_spec)
        assert is_cohen_macaulay(independence_complex(edge), field_spec)


def test_koszul_totals_for_regular_sequence():
    ideal = MonomialIdeal.from_named_generators(('x1', 'x2', 'x3'), [['x2'], ['x1', 'x3']])
    assert hochster_betti(ideal, QQ, ModuleKind.QUOTIENT).total_betti() == [1, 2, 1]


# Trial seeding, reports and the suite registry
def test_trial_seeds():
    assert trial_seeds(2, 3) == [2000006, 2000007, 2000008]


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        verify_suite('no-such-suite', 1, 0)
    with pytest.raises(UnknownSuiteError):
        run_trial('no-such-suite', 0, SuiteCaps())


def test_exceptions_become_failures(mocker):
    mocker.patch.dict(SUITES, {'boom': raising_suite})
    result = run_trial('boom', 4, SMALL_CAPS)
    assert result.status == TrialStatus.FAIL
    assert result.detail == "error: boom"


def test_report_sorts_failures_by_seed():
    results = [
        TrialResult(9, TrialStatus.FAIL, {'a': 1}, 'late'),
        TrialResult(3, TrialStatus.PASS),
        TrialResult(1, TrialStatus.FAIL, {'a': 2}, 'early'),
        TrialResult(5, TrialStatus.SKIP),
    ]
    report = SuiteReport.from_results('demo', results)
    assert [seed for seed, _ in report.failures] == [1, 9]
    assert (report.passes, report.skipped, report.trials) == (1, 1, 4)
    assert not report.ok
    assert 'seed 1: early' in report.to_text()


def test_determinism():
    first = verify_suite('lemma-J', 4, 7, SMALL_CAPS).to_dict()
    second = verify_suite('lemma-J', 4, 7, SMALL_CAPS).to_dict()
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_pd_linear_draws_nonpure_instances_within_oracle_caps():
    results = [run_trial('pd-linear', seed, SMALL_CAPS) for seed in trial_seeds(0, 40)]
    assert all(r.status != TrialStatus.FAIL for r in results)

    drawn = [(complex_from_dict(r.instance['complex']), r.instance.get('s')) for r in results]
    assert any(not delta.is_pure() for delta, _ in drawn)
    for delta, s in drawn:
        if s is not None:
            assert sum(s ** len(f) for f in delta.facets) <= SMALL_CAPS.max_oracle_generators


def test_pd_linear_does_not_trust_the_certificate(mocker):
    """Both projective dimensions come from Hochster's formula"""
    mocker.patch.object(LinearQuotientsCertificate, 'projdim', return_value=99)
    report = verify_suite('pd-linear', 12, 5, SMALL_CAPS)
    assert report.ok, report.to_text()


def test_dual_betti_single_trial():
    report = verify_suite('dual-betti', 1, 7)
    assert report.ok
    assert report.passes + report.skipped == 1


@pytest.mark.slow
@pytest.mark.parametrize('name', sorted(SUITES))
def test_every_suite_passes_small_runs(name):
    report = verify_suite(name, 4, 1, SMALL_CAPS)
    assert report.ok, report.to_text()
    assert report.passes + len(report.failures) + report.skipped == report.trials


def test_from_config_ignores_unknown_keys():
    caps = SuiteCaps.from_config({'max_vertices': 5, 'seed': 3}, max_multiplicity=2, max_facets=None)
    assert caps.max_vertices == 5
    assert caps.max_multiplicity == 2
    assert caps.max_facets == SuiteCaps().max_facets


# Configuration, failure dumps, invariant reports and the cache
def test_suite_caps_from_config(verifier):
    caps = verifier.suite_caps(max_vertices=3)
    assert caps.max_vertices == 3
    assert caps.max_ambient == 10
    assert caps.max_lq_generators == 12


def test_ambient_clamped_to_hochster_cap(verifier):
    assert verifier.suite_caps(max_ambient=40).max_ambient == 16


def test_verify_saves_failures(verifier, test_config, mocker, tmp_path):
    mocker.patch.dict(SUITES, {'forced': failing_suite})
    report = verifier.verify('forced', trials=2, seed=1)
    assert len(report.failures) == 2

    output_dir = tmp_path / 'results'
    seed = trial_seeds(1, 2)[0]
    saved = json.loads((output_dir / f"forced_{seed}.json").read_text())
    assert saved['instance']['detail'] == "forced failure"
    assert (output_dir / f"forced_{seed}_complex.json").exists()


def test_verify_uses_config_defaults(verifier, mocker):
    spy = mocker.spy(verification, 'verify_suite')
    verifier.verify('lemma-J')
    args = spy.call_args.args
    assert args[:3] == ('lemma-J', 3, 0)


def test_invariants_of_ideal(verifier):
    ideal = MonomialIdeal.from_named_generators(('x1', 'x2', 'x3'), [['x2'], ['x1', 'x3']])
    report = verifier.invariants('ideal', ideal, [QQ])
    entry = report['fields']['q']
    assert entry['total_betti'] == [1, 2, 1]
    assert entry['projdim'] == 2
    assert entry['cohen_macaulay'] is True
    assert report['dimension'] == 0


def test_invariants_of_void_complex(verifier):
    report = verifier.invariants('complex', SimplicialComplex.void(('x1',)))
    assert report['dimension'] is None
    assert report['fields'] == {}


def test_invariants_of_full_simplex(verifier):
    report = verifier.invariants('complex', SimplicialComplex.simplex(('x1', 'x2')), [QQ])
    assert report['fields']['q']['total_betti'] == [1]
    assert report['shellable'] == 'yes'


def test_malformed_cached_table_is_recomputed(verifier):
    ideal = MonomialIdeal.from_named_generators(('x1', 'x2', 'x3'), [['x1', 'x2'], ['x2', 'x3']])
    key = ideal.canonical_key()
    verifier.cache.cache_betti(key, QQ.code, ModuleKind.IDEAL.value, [[0, 2, -1]])

    table = verifier.betti_table(ideal, QQ, ModuleKind.IDEAL)

    assert table.as_dict() == {(0, 2): 2, (1, 3): 1}
    assert verifier.cache.get_betti_cache(key, QQ.code, ModuleKind.IDEAL.value) == [[0, 2, 2], [1, 3, 1]]


def test_betti_table_is_cached(verifier, mocker):
    ideal = MonomialIdeal.from_named_generators(('x1', 'x2', 'x3'), [['x1', 'x2'], ['x2', 'x3']])
    spy = mocker.spy(verification, 'hochster_betti')
    first = verifier.betti_table(ideal, QQ, ModuleKind.IDEAL)
    second = verifier.betti_table(ideal, QQ, ModuleKind.IDEAL)
    assert first == second
    assert spy.call_count == 1
    assert verifier.get_cache_stats()['betti_tables'] == 1

    verifier.clear_cache()
    assert verifier.get_cache_stats()['betti_tables'] == 0


def test_from_config_file(test_config, tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text(yaml.safe_dump(test_config))
    verifier = ExpansionVerifier.from_config_file(str(path))
    assert verifier.config['verification']['trials'] == 3


def test_from_env_overrides(test_config, tmp_path, monkeypatch):
    path = tmp_path / 'custom.yaml'
    path.write_text(yaml.safe_dump(test_config))
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('EXPANSION_CONFIG', str(path))
    monkeypatch.setenv('EXPANSION_SEED', '42')
    monkeypatch.setenv('EXPANSION_TRIALS', '9')
    monkeypatch.setenv('EXPANSION_CACHE_DB', str(tmp_path / 'env.db'))

    verifier = ExpansionVerifier.from_env()

    assert verifier.config['verification']['seed'] == 42
    assert verifier.config['verification']['trials'] == 9
    assert verifier.cache.db_path == str(tmp_path / 'env.db')


def test_from_env_without_config_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv('EXPANSION_CONFIG', raising=False)
    monkeypatch.delenv('EXPANSION_CACHE_DB', raising=False)
    verifier = ExpansionVerifier.from_env('missing.yaml')
    assert verifier.cache is None
    assert verifier.suite_caps().max_vertices == 6


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
