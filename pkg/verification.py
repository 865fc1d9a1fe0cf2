"""
Verification Module - Seeded randomized suites and the main orchestrator
Each suite draws random instances within caps and evaluates both sides of
one expansion statement through independent code paths
"""

import concurrent.futures
import logging
import os
import random
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from itertools import repeat
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

import yaml

from cache_manager import CacheManager
from complex_core import (
    ExpansionVector,
    SimplicialComplex,
    alexander_dual,
    complement,
    expand,
    verify_epsilon_lemma,
)
from graphs import (
    Graph,
    closed_twins,
    complement_graph,
    duplicate_vertex,
    edge_ideal,
    graph_expand,
    graph_expand_hat,
    independence_complex,
    is_co_chordal,
    remove_vertex,
)
from homology import (
    GF2,
    QQ,
    SHELLING_MAX_FACETS,
    BettiTable,
    Decision,
    FieldSpec,
    HOCHSTER_MAX_VARIABLES,
    HomologyError,
    ModuleKind,
    hochster_betti,
    is_cohen_macaulay,
    is_sequentially_cm,
    is_shellable,
    is_vertex_decomposable,
    reduced_homology,
)
from ideals import (
    LQ_MAX_GENERATORS,
    IdealError,
    MonomialIdeal,
    alexander_dual_ideal,
    betti_from_linear_quotients,
    complex_of_ideal,
    dual_j,
    expand_j_generators,
    expansion_order,
    facet_ideal,
    has_linear_resolution,
    intersect_primes,
    linear_quotients_order,
    stanley_reisner_ideal,
)
from random_instances import (
    random_alpha,
    random_complex,
    random_graph,
    random_ideal,
    random_nonpure_complex,
    random_pure_complex,
)
from serialization import (
    betti_to_dict,
    complex_to_dict,
    document_to_dict,
    graph_to_dict,
    homology_to_dict,
    ideal_to_dict,
)
from utils import get_output_filename, save_json_file, setup_logging


logger = logging.getLogger(__name__)

TRIAL_SEED_STRIDE = 1_000_003
FIELDS = (QQ, GF2)


class UnknownSuiteError(ValueError):
    """Raised when a suite name is not registered"""


class TrialStatus(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    SKIP = 'skip'


@dataclass(frozen=True)
class SuiteCaps:
    """Size limits for randomly generated instances"""

    max_vertices: int = 6
    max_facets: int = 8
    max_graph_vertices: int = 7
    max_multiplicity: int = 3
    max_ambient: int = HOCHSTER_MAX_VARIABLES
    max_ideal_generators: int = 10
    max_lq_generators: int = LQ_MAX_GENERATORS
    max_shelling_facets: int = SHELLING_MAX_FACETS
    # Reisner checks visit every face; complexes whose facets span more
    # faces than this are skipped
    max_faces: int = 2048
    # Hochster oracle input size; larger ideals are skipped
    max_oracle_generators: int = 24

    @classmethod
    def from_config(cls, config: Dict[str, Any], **overrides) -> 'SuiteCaps':
        """Pick the known cap names out of a config section, then apply overrides"""
        names = {f.name for f in fields(cls)}
        values = {k: v for k, v in config.items() if k in names}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass(frozen=True)
class TrialResult:
    """Outcome of one seeded trial with its serialized instance"""

    seed: int
    status: TrialStatus
    instance: Dict[str, Any] = field(default_factory=dict)
    detail: str = ''


@dataclass
class SuiteReport:
    """Aggregated outcome of a suite run"""

    suite_name: str
    trials: int
    passes: int = 0
    failures: List[Tuple[int, Dict[str, Any]]] = field(default_factory=list)
    skipped: int = 0

    @classmethod
    def from_results(cls, name: str, results: List[TrialResult]) -> 'SuiteReport':
        ordered = sorted(results, key=lambda r: r.seed)
        report = cls(suite_name=name, trials=len(ordered))
        for result in ordered:
            if result.status == TrialStatus.PASS:
                report.passes += 1
            elif result.status == TrialStatus.SKIP:
                report.skipped += 1
            else:
                report.failures.append((result.seed, {**result.instance, 'detail': result.detail}))
        return report

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite_name,
            'trials': self.trials,
            'passes': self.passes,
            'failures': [{'seed': seed, 'instance': instance} for seed, instance in self.failures],
            'skipped': self.skipped,
        }

    def to_text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [
            f"{self.suite_name}: {status}  trials={self.trials} passes={self.passes} "
            f"failures={len(self.failures)} skipped={self.skipped}"
        ]
        for seed, instance in self.failures:
            lines.append(f"  seed {seed}: {instance.get('detail', '')}")
        return "\n".join(lines)


Instance = Dict[str, Any]
Outcome = Tuple[TrialStatus, str]
SuiteFunction = Callable[[random.Random, SuiteCaps, Instance], Outcome]


def _verdict(ok: bool, detail: str = '') -> Outcome:
    return (TrialStatus.PASS, '') if ok else (TrialStatus.FAIL, detail)


def _skip(reason: str) -> Outcome:
    return TrialStatus.SKIP, reason


def _face_bound(delta: SimplicialComplex) -> int:
    """Upper bound on the number of faces"""
    return sum(2 ** len(f) for f in delta.facets)


def _within_faces(caps: SuiteCaps, *complexes: SimplicialComplex) -> bool:
    return all(_face_bound(delta) <= caps.max_faces for delta in complexes)


def _oracle(ideal: MonomialIdeal, caps: SuiteCaps, kind: ModuleKind,
            field_spec: FieldSpec = QQ) -> Optional[BettiTable]:
    """Hochster table, or None when the ideal is above the oracle caps"""
    if ideal.num_variables > caps.max_ambient or len(ideal.generators) > caps.max_oracle_generators:
        return None
    return hochster_betti(ideal, field_spec, kind, caps.max_ambient)


def _complex_and_alpha(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Tuple[SimplicialComplex, ExpansionVector]:
    delta = random_complex(rng, caps.max_vertices, caps.max_facets)
    alpha = random_alpha(rng, delta.num_vertices, caps.max_multiplicity, caps.max_ambient)
    instance['complex'] = complex_to_dict(delta)
    instance['alpha'] = list(alpha)
    return delta, alpha


def _graph_and_alpha(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Tuple[Graph, ExpansionVector]:
    graph = random_graph(rng, caps.max_graph_vertices)
    alpha = random_alpha(rng, graph.num_vertices, caps.max_multiplicity, caps.max_ambient)
    instance['graph'] = graph_to_dict(graph)
    instance['alpha'] = list(alpha)
    return graph, alpha


def suite_dual_betti(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Total Betti numbers of S/J agree for a complex and its expansion"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    base = _oracle(dual_j(delta), caps, ModuleKind.QUOTIENT)
    expanded = _oracle(dual_j(expand(delta, alpha)), caps, ModuleKind.QUOTIENT)
    if base is None or expanded is None:
        return _skip("dual ideal above oracle caps")
    left, right = base.total_betti(), expanded.total_betti()
    return _verdict(left == right, f"total Betti {left} vs {right}")


def suite_dual_cm(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """S/J is Cohen-Macaulay iff its expanded counterpart is, over Q and GF(2)"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    base = complex_of_ideal(dual_j(delta))
    expanded = complex_of_ideal(dual_j(expand(delta, alpha)))
    if not _within_faces(caps, base, expanded):
        return _skip("complement complexes above face cap")
    for field_spec in FIELDS:
        left, right = is_cohen_macaulay(base, field_spec), is_cohen_macaulay(expanded, field_spec)
        if left != right:
            return _verdict(False, f"CM over {field_spec}: {left} vs {right}")
    return _verdict(True)


def _facet_ideal_tables(delta: SimplicialComplex, alpha: ExpansionVector,
                        caps: SuiteCaps) -> Optional[Tuple[BettiTable, BettiTable]]:
    base = _oracle(facet_ideal(delta), caps, ModuleKind.IDEAL)
    expanded = _oracle(facet_ideal(expand(delta, alpha)), caps, ModuleKind.IDEAL)
    if base is None or expanded is None:
        return None
    return base, expanded


def suite_regularity(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """reg I(delta) = reg I(delta^alpha)"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    tables = _facet_ideal_tables(delta, alpha, caps)
    if tables is None:
        return _skip("facet ideal above oracle caps")
    left, right = (t.regularity() for t in tables)
    return _verdict(left == right, f"regularity {left} vs {right}")


def suite_linear_resolution(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """I(delta) has a linear resolution iff I(delta^alpha) does"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    tables = _facet_ideal_tables(delta, alpha, caps)
    if tables is None:
        return _skip("facet ideal above oracle caps")
    left, right = (has_linear_resolution(t) for t in tables)
    return _verdict(left == right, f"linear resolution {left} vs {right}")


def suite_lemma_j(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Substituted generators of J equal the generators of J of the expansion"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    substituted = expand_j_generators(dual_j(delta), alpha)
    direct = dual_j(expand(delta, alpha))
    return _verdict(
        substituted.canonical_key() == direct.canonical_key(),
        f"{substituted} vs {direct}",
    )


def suite_lemma_epsilon(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    delta = random_complex(rng, caps.max_vertices, caps.max_facets)
    beta = random_alpha(rng, delta.num_vertices, min(caps.max_multiplicity, 2), caps.max_ambient - 1)
    i = rng.randrange(delta.num_vertices)
    instance.update(complex=complex_to_dict(delta), beta=list(beta), index=i)
    return _verdict(verify_epsilon_lemma(delta, beta, i), "relabeling is not a facet bijection")


def suite_betti_lq(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Binomial formula from a linear quotients certificate matches Hochster"""
    ideal = random_ideal(rng, caps.max_vertices, caps.max_ideal_generators)
    instance['ideal'] = ideal_to_dict(ideal)
    search = linear_quotients_order(ideal, caps.max_lq_generators)
    if search.decision == Decision.UNDECIDED:
        return _skip("linear quotients search above cap")
    if not search.is_yes:
        return _verdict(True)
    oracle = _oracle(ideal, caps, ModuleKind.IDEAL)
    if oracle is None:
        return _skip("ideal above oracle caps")
    formula = betti_from_linear_quotients(search.certificate, ideal)
    if formula.projdim() != search.certificate.projdim():
        return _verdict(False, "certificate projdim disagrees with its Betti table")
    return _verdict(formula == oracle, f"formula {formula.entries} vs oracle {oracle.entries}")


def _expanded_generator_count(delta: SimplicialComplex, s: int) -> int:
    """Number of facets of the uniform expansion delta^(s,...,s)"""
    return sum(s ** len(f) for f in delta.facets)


def suite_pd_linear(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """
    pd I(delta^(s,...,s)) = pd I(delta) * s + (dim delta + 1)(s - 1) for pure
    delta with linear quotients, and at most that otherwise
    """
    if rng.random() < 0.5 or caps.max_vertices < 3:
        delta = random_pure_complex(rng, caps.max_vertices, caps.max_facets)
    else:
        delta = random_nonpure_complex(rng, caps.max_vertices, caps.max_facets)
    instance['complex'] = complex_to_dict(delta)
    choices = [s for s in (2, 3)
               if s * delta.num_vertices <= caps.max_ambient
               and _expanded_generator_count(delta, s) <= caps.max_oracle_generators]
    if not choices:
        return _skip("no uniform multiplicity fits the ambient and oracle caps")
    s = rng.choice(choices)
    instance['s'] = s

    search = linear_quotients_order(facet_ideal(delta), caps.max_lq_generators)
    if search.decision == Decision.UNDECIDED:
        return _skip("linear quotients search above cap")
    if not search.is_yes:
        return _verdict(True)

    base = _oracle(facet_ideal(delta), caps, ModuleKind.IDEAL)
    oracle = _oracle(facet_ideal(expand(delta, ExpansionVector.uniform(delta.num_vertices, s))),
                     caps, ModuleKind.IDEAL)
    if base is None or oracle is None:
        return _skip("facet ideal above oracle caps")
    bound = base.projdim() * s + (delta.dimension + 1) * (s - 1)
    pd = oracle.projdim()
    if delta.is_pure():
        return _verdict(pd == bound, f"pure: pd {pd} vs formula {bound}")
    return _verdict(pd <= bound, f"nonpure: pd {pd} exceeds bound {bound}")


def suite_graph_cochordal(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Co-chordality is invariant under expansion, and matches Froberg's criterion"""
    graph, alpha = _graph_and_alpha(rng, caps, instance)
    base = is_co_chordal(graph)
    expanded = is_co_chordal(graph_expand(graph, alpha))
    if base != expanded:
        return _verdict(False, f"co-chordal {base} vs expanded {expanded}")
    if graph.edges:
        ideal = edge_ideal(graph)
        for field_spec in FIELDS:
            linear = _oracle(ideal, caps, ModuleKind.IDEAL, field_spec)
            if linear is not None and (linear.regularity() == 2) != base:
                return _verdict(False, f"edge ideal regularity {linear.regularity()} over {field_spec}, co-chordal {base}")
    return _verdict(True)


def _clique_complex(graph: Graph) -> SimplicialComplex:
    return independence_complex(complement_graph(graph))


def suite_graph_coshellable(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Independence complex of the complement is shellable for G iff for G^alpha"""
    graph, alpha = _graph_and_alpha(rng, caps, instance)
    base = is_shellable(_clique_complex(graph), caps.max_shelling_facets)
    expanded = is_shellable(_clique_complex(graph_expand(graph, alpha)), caps.max_shelling_facets)
    if Decision.UNDECIDED in (base.decision, expanded.decision):
        return _skip("shelling search above cap")
    return _verdict(base.decision == expanded.decision,
                    f"shellable {base.decision.value} vs {expanded.decision.value}")


def suite_graph_cocm(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    graph, alpha = _graph_and_alpha(rng, caps, instance)
    base = _clique_complex(graph)
    expanded = _clique_complex(graph_expand(graph, alpha))
    if not _within_faces(caps, base, expanded):
        return _skip("clique complexes above face cap")
    for field_spec in FIELDS:
        left, right = is_cohen_macaulay(base, field_spec), is_cohen_macaulay(expanded, field_spec)
        if left != right:
            return _verdict(False, f"CM over {field_spec}: {left} vs {right}")
    return _verdict(True)


def suite_graph_dual_vd(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Alexander dual of the independence complex is vertex decomposable for G iff for G^alpha"""
    graph, alpha = _graph_and_alpha(rng, caps, instance)
    if not graph.edges:
        return _skip("edgeless graph has a full simplex independence complex")
    base = is_vertex_decomposable(alexander_dual(independence_complex(graph)))
    expanded = is_vertex_decomposable(alexander_dual(independence_complex(graph_expand(graph, alpha))))
    return _verdict(base == expanded, f"dual vertex decomposable {base} vs {expanded}")


def _preserved(before: SimplicialComplex, after: SimplicialComplex, caps: SuiteCaps) -> Outcome:
    """Whenever before is CM, sequentially CM or shellable, after must be too"""
    undecided = False
    if _within_faces(caps, before, after):
        for field_spec in FIELDS:
            if is_cohen_macaulay(before, field_spec) and not is_cohen_macaulay(after, field_spec):
                return _verdict(False, f"Cohen-Macaulay over {field_spec} lost")
            if is_sequentially_cm(before, field_spec) and not is_sequentially_cm(after, field_spec):
                return _verdict(False, f"sequentially Cohen-Macaulay over {field_spec} lost")
    else:
        undecided = True
    shell_before = is_shellable(before, caps.max_shelling_facets)
    if shell_before.is_yes:
        shell_after = is_shellable(after, caps.max_shelling_facets)
        if shell_after.decision == Decision.NO:
            return _verdict(False, "shellability lost")
        undecided = undecided or shell_after.decision == Decision.UNDECIDED
    elif shell_before.decision == Decision.UNDECIDED:
        undecided = True
    return _skip("some property undecided within caps") if undecided else _verdict(True)


def suite_vertex_duplication(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Duplicating a vertex is the hat expansion at 1 + delta_x and keeps CM, SCM, shellable"""
    graph = random_graph(rng, caps.max_graph_vertices, min_vertices=1)
    x = rng.randrange(graph.num_vertices)
    instance.update(graph=graph_to_dict(graph), vertex=graph.vertex_names[x])

    duplicated = duplicate_vertex(graph, x)
    hat = graph_expand_hat(graph, ExpansionVector.delta(graph.num_vertices, x))
    mapping = {name: f"{name}_1" for name in graph.vertex_names}
    mapping[duplicated.vertex_names[-1]] = f"{graph.vertex_names[x]}_2"
    if not duplicated.rename(mapping).same_as(hat):
        return _verdict(False, "duplication differs from the hat expansion")
    return _preserved(independence_complex(graph), independence_complex(duplicated), caps)


def suite_twin_removal(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Removing one of two closed twins keeps CM, SCM and shellable"""
    graph = random_graph(rng, caps.max_graph_vertices)
    twins = closed_twins(graph)
    if not twins:
        graph = duplicate_vertex(graph, rng.randrange(graph.num_vertices))
        twins = closed_twins(graph)
    x = rng.choice(rng.choice(twins))
    instance.update(graph=graph_to_dict(graph), vertex=graph.vertex_names[x])
    return _preserved(independence_complex(graph), independence_complex(remove_vertex(graph, x)), caps)


def suite_lq_expansion(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Linear quotients transfer to and from the expansion"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    base = linear_quotients_order(facet_ideal(delta), caps.max_lq_generators)
    if base.decision == Decision.UNDECIDED:
        return _skip("linear quotients search above cap")
    if base.is_yes:
        try:
            expansion_order(delta, base.certificate, alpha)
        except IdealError as e:
            return _verdict(False, f"induced order rejected: {e}")
        return _verdict(True)
    expanded = linear_quotients_order(facet_ideal(expand(delta, alpha)), caps.max_lq_generators)
    if expanded.decision == Decision.UNDECIDED:
        return _skip("expanded linear quotients search above cap")
    return _verdict(not expanded.is_yes, "expansion has linear quotients but the base does not")


def suite_sr_expansion(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """delta is CM (sequentially CM) iff delta^alpha is"""
    delta, alpha = _complex_and_alpha(rng, caps, instance)
    expanded = expand(delta, alpha)
    if not _within_faces(caps, delta, expanded):
        return _skip("expansion above face cap")
    for field_spec in FIELDS:
        for name, check in (('CM', is_cohen_macaulay), ('SCM', is_sequentially_cm)):
            left, right = check(delta, field_spec), check(expanded, field_spec)
            if left != right:
                return _verdict(False, f"{name} over {field_spec}: {left} vs {right}")
    return _verdict(True)


def suite_hat_expansion(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    graph, alpha = _graph_and_alpha(rng, caps, instance)
    left = independence_complex(graph_expand_hat(graph, alpha))
    right = expand(independence_complex(graph), alpha)
    return _verdict(left == right, f"{left} vs {right}")


def suite_duality(rng: random.Random, caps: SuiteCaps, instance: Instance) -> Outcome:
    """Identities between J, Stanley-Reisner ideals, facet ideals and duals"""
    delta = random_complex(rng, caps.max_vertices, caps.max_facets)
    instance['complex'] = complex_to_dict(delta)
    j = dual_j(delta)
    checks = [
        ('J = I of the complement', stanley_reisner_ideal(complement(delta))),
        ('J = intersection of primes', intersect_primes(delta.facets, delta.vertex_names)),
    ]
    for label, ideal in checks:
        if ideal.canonical_key() != j.canonical_key():
            return _verdict(False, f"{label}: {ideal} vs {j}")
    if alexander_dual_ideal(j).canonical_key() != facet_ideal(delta).canonical_key():
        return _verdict(False, "dual of J is not the facet ideal")
    if delta.is_full_simplex:
        return _verdict(True)
    sr = stanley_reisner_ideal(delta)
    if complex_of_ideal(sr) != delta:
        return _verdict(False, "complex of the Stanley-Reisner ideal differs")
    targets = {
        alexander_dual_ideal(sr).canonical_key(),
        stanley_reisner_ideal(alexander_dual(delta)).canonical_key(),
        facet_ideal(complement(delta)).canonical_key(),
    }
    return _verdict(len(targets) == 1, "Alexander dual identities disagree")


SUITES: Dict[str, SuiteFunction] = {
    'dual-betti': suite_dual_betti,
    'dual-cm': suite_dual_cm,
    'regularity': suite_regularity,
    'linear-resolution': suite_linear_resolution,
    'lemma-J': suite_lemma_j,
    'lemma-epsilon': suite_lemma_epsilon,
    'betti-lq': suite_betti_lq,
    'pd-linear': suite_pd_linear,
    'graph-cochordal': suite_graph_cochordal,
    'graph-coshellable': suite_graph_coshellable,
    'graph-cocm': suite_graph_cocm,
    'graph-dual-vd': suite_graph_dual_vd,
    'vertex-duplication': suite_vertex_duplication,
    'twin-removal': suite_twin_removal,
    'lq-expansion': suite_lq_expansion,
    'sr-expansion': suite_sr_expansion,
    'hat-expansion': suite_hat_expansion,
    'duality': suite_duality,
}


def trial_seeds(seed: int, trials: int) -> List[int]:
    return [seed * TRIAL_SEED_STRIDE + t for t in range(trials)]


def run_trial(name: str, seed: int, caps: SuiteCaps) -> TrialResult:
    """
    Run one trial of a suite from its own seed

    Exceptions raised while evaluating an instance count as failures, with
    the instance drawn so far attached.
    """
    if name not in SUITES:
        raise UnknownSuiteError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}")
    instance: Instance = {}
    try:
        status, detail = SUITES[name](random.Random(seed), caps, instance)
    except Exception as e:
        logger.error(f"Suite {name} seed {seed} raised: {e}")
        status, detail = TrialStatus.FAIL, f"error: {e}"
    logger.debug(f"{name} seed {seed}: {status.value} {detail}")
    return TrialResult(seed, status, instance, detail)


def verify_suite(name: str, trials: int, seed: int, caps: Optional[SuiteCaps] = None,
                 max_workers: Optional[int] = None) -> SuiteReport:
    """
    Run a suite over seeded random instances

    Args:
        name: Registered suite name
        trials: Number of trials
        seed: Master seed; trial t uses seed * 1000003 + t
        caps: Instance caps (defaults when omitted)
        max_workers: Run trials in a process pool when set above 1

    Returns:
        SuiteReport with failures sorted by trial seed
    """
    if name not in SUITES:
        raise UnknownSuiteError(f"Unknown suite {name!r}; choose from {', '.join(SUITES)}")
    caps = caps or SuiteCaps()
    seeds = trial_seeds(seed, trials)
    if max_workers and max_workers > 1 and trials > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(run_trial, repeat(name), seeds, repeat(caps)))
    else:
        results = [run_trial(name, s, caps) for s in seeds]
    return SuiteReport.from_results(name, results)


class ExpansionVerifier:
    """Main orchestration class: configuration, suites, invariant reports and the cache"""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """
        Initialize the verifier

        Args:
            config: Optional configuration dictionary (config.yaml layout)
        """
        setup_logging((config or {}).get('logging'))
        self.logger = logging.getLogger(__name__)

        self.config = config or self._load_default_config()

        engine = self.config.get('engine', {})
        self.max_variables = engine.get('hochster_max_variables', HOCHSTER_MAX_VARIABLES)
        self.lq_max_generators = engine.get('lq_max_generators', LQ_MAX_GENERATORS)
        self.shelling_max_facets = engine.get('shelling_max_facets', SHELLING_MAX_FACETS)
        self.default_fields = [FieldSpec.parse(code) for code in engine.get('default_fields', ['q', 'f2'])]

        cache_config = self.config.get('cache', {})
        self.cache = None
        if cache_config.get('enabled', False):
            self.cache = CacheManager(db_path=cache_config.get('db_path', './cache/expansion_cache.db'))

        self.logger.debug("Expansion verifier initialized")

    @staticmethod
    def load_config(config_path: str = 'config.yaml') -> Dict[str, Any]:
        """Read a YAML configuration file"""
        with open(config_path, 'r') as f:
            return yaml.safe_load(f) or {}

    @classmethod
    def load_env_config(cls, config_path: str = 'config.yaml') -> Dict[str, Any]:
        """
        Configuration from config.yaml with environment overrides

        EXPANSION_CONFIG replaces the config path; EXPANSION_SEED,
        EXPANSION_TRIALS, EXPANSION_CACHE_DB and EXPANSION_LOG_LEVEL
        override single values. A missing file gives the defaults.
        """
        from dotenv import load_dotenv
        load_dotenv()

        config_path = os.getenv('EXPANSION_CONFIG', config_path)
        config = cls.load_config(config_path) if os.path.exists(config_path) else {}
        if not config:
            config = cls._load_default_config()

        verification = config.setdefault('verification', {})
        if os.getenv('EXPANSION_SEED'):
            verification['seed'] = int(os.getenv('EXPANSION_SEED'))
        if os.getenv('EXPANSION_TRIALS'):
            verification['trials'] = int(os.getenv('EXPANSION_TRIALS'))
        if os.getenv('EXPANSION_CACHE_DB'):
            config.setdefault('cache', {}).update(enabled=True, db_path=os.getenv('EXPANSION_CACHE_DB'))
        if os.getenv('EXPANSION_LOG_LEVEL'):
            config.setdefault('logging', {})['level'] = os.getenv('EXPANSION_LOG_LEVEL').upper()

        return config

    @classmethod
    def from_config_file(cls, config_path: str = 'config.yaml'):
        """
        Create ExpansionVerifier from configuration file

        Args:
            config_path: Path to YAML config file

        Returns:
            ExpansionVerifier instance
        """
        return cls(cls.load_config(config_path))

    @classmethod
    def from_env(cls, config_path: str = 'config.yaml'):
        """Create ExpansionVerifier from config.yaml with environment overrides"""
        return cls(cls.load_env_config(config_path))

    def suite_caps(self, **overrides) -> SuiteCaps:
        """Caps from the verification section, with engine caps and explicit overrides"""
        section = dict(self.config.get('verification', {}))
        section.setdefault('max_lq_generators', self.lq_max_generators)
        section.setdefault('max_shelling_facets', self.shelling_max_facets)
        caps = SuiteCaps.from_config(section, **overrides)
        if caps.max_ambient > self.max_variables:
            caps = replace(caps, max_ambient=self.max_variables)
        return caps

    def verify(self, suite: str, trials: Optional[int] = None, seed: Optional[int] = None,
               caps: Optional[SuiteCaps] = None) -> SuiteReport:
        """
        Run one suite with configured defaults and save failing instances

        Args:
            suite: Suite name
            trials: Trial count (config default otherwise)
            seed: Master seed (config default otherwise)
            caps: Instance caps (config default otherwise)

        Returns:
            SuiteReport
        """
        verification = self.config.get('verification', {})
        trials = trials if trials is not None else verification.get('trials', 200)
        seed = seed if seed is not None else verification.get('seed', 0)
        caps = caps or self.suite_caps()
        workers = verification.get('max_workers', 4) if verification.get('use_parallel_processing', False) else None

        self.logger.info(f"Running suite {suite}: trials={trials} seed={seed}")
        try:
            report = verify_suite(suite, trials, seed, caps, max_workers=workers)
        except UnknownSuiteError:
            raise
        except Exception as e:
            self.logger.error(f"Suite {suite} failed to run: {e}", exc_info=True)
            raise

        self.logger.info(
            f"Suite {suite}: {report.passes} passed, {len(report.failures)} failed, {report.skipped} skipped"
        )
        if report.failures and self.config.get('output', {}).get('save_failures', True):
            self._save_failures(report)
        return report

    def verify_all(self, trials: Optional[int] = None, seed: Optional[int] = None,
                   caps: Optional[SuiteCaps] = None) -> List[SuiteReport]:
        return [self.verify(name, trials, seed, caps) for name in SUITES]

    def _save_failures(self, report: SuiteReport):
        """Write each failing instance, and each object in it, as loadable JSON files"""
        output_config = self.config.get('output', {})
        output_dir = Path(output_config.get('output_directory', './verification_results'))
        indent = output_config.get('json_indent', 2)
        try:
            for seed, instance in report.failures:
                prefix = f"{report.suite_name}_{seed}"
                save_json_file(
                    {'suite': report.suite_name, 'seed': seed, 'instance': instance},
                    str(output_dir / get_output_filename(prefix)),
                    indent,
                )
                for key in ('complex', 'ideal', 'graph'):
                    if key in instance:
                        save_json_file(instance[key], str(output_dir / get_output_filename(f"{prefix}_{key}")), indent)
            self.logger.info(f"Saved {len(report.failures)} failing instances to {output_dir}")
        except OSError as e:
            self.logger.error(f"Failed to save failing instances: {e}")

    def betti_table(self, ideal: MonomialIdeal, field_spec: FieldSpec = QQ,
                    kind: ModuleKind = ModuleKind.QUOTIENT) -> BettiTable:
        """
        Hochster Betti table, through the SQLite cache when enabled

        The zero ideal gets the table of S itself.
        """
        kind = ModuleKind(kind)
        if ideal.is_zero:
            return BettiTable(ModuleKind.QUOTIENT, ((0, 0, 1),)) if kind == ModuleKind.QUOTIENT \
                else BettiTable(ModuleKind.IDEAL)
        key = ideal.canonical_key()
        if self.cache:
            cached = self.cache.get_betti_cache(key, field_spec.code, kind.value)
            if cached is not None:
                try:
                    return BettiTable(kind, tuple(tuple(e) for e in cached))
                except (HomologyError, TypeError, ValueError) as e:
                    self.logger.warning(f"Discarding malformed cached table for {key}: {e}")
                    self.cache.delete_betti_cache(key)
        table = hochster_betti(ideal, field_spec, kind, self.max_variables)
        if self.cache:
            self.cache.cache_betti(key, field_spec.code, kind.value, [list(e) for e in table.entries])
        return table

    def invariants(self, kind: str, document, field_specs: Optional[List[FieldSpec]] = None) -> Dict[str, Any]:
        """
        Invariant report for a complex, ideal or graph

        The quotient ring is K[delta] for a complex, S/I for an ideal and
        S/I(G) for a graph; the flags are those of the matching complex
        (delta, the complex of I, the independence complex of G).

        Args:
            kind: 'complex', 'ideal' or 'graph'
            document: Parsed object
            field_specs: Coefficient fields (configured defaults otherwise)

        Returns:
            Report dictionary
        """
        field_specs = field_specs or self.default_fields
        if kind == 'complex':
            delta = document
            ideal = stanley_reisner_ideal(delta) if not delta.is_void else None
        elif kind == 'ideal':
            ideal = document
            delta = complex_of_ideal(ideal)
        else:
            delta = independence_complex(document)
            ideal = edge_ideal(document) if document.edges else MonomialIdeal(document.vertex_names)

        report: Dict[str, Any] = {
            'input': document_to_dict(document),
            'kind': kind,
            'complex': complex_to_dict(delta),
            'dimension': delta.dimension,
            'f_vector': delta.f_vector() if not delta.is_void else [],
            'fields': {},
        }
        if delta.is_void:
            self.logger.warning("Void complex: homological invariants are undefined")
            return report

        report['pure'] = delta.is_pure()
        shelling = is_shellable(delta, self.shelling_max_facets)
        report['shellable'] = shelling.decision.value
        report['vertex_decomposable'] = is_vertex_decomposable(delta)

        for field_spec in field_specs:
            entry: Dict[str, Any] = {
                'field': str(field_spec),
                'homology': homology_to_dict(reduced_homology(delta, field_spec)),
                'cohen_macaulay': is_cohen_macaulay(delta, field_spec),
                'sequentially_cm': is_sequentially_cm(delta, field_spec),
            }
            try:
                table = self.betti_table(ideal, field_spec, ModuleKind.QUOTIENT)
            except HomologyError as e:
                self.logger.warning(f"Betti table skipped: {e}")
            else:
                entry.update(
                    betti=betti_to_dict(table),
                    total_betti=table.total_betti(),
                    regularity=table.regularity(),
                    projdim=table.projdim(),
                )
            report['fields'][field_spec.code] = entry
        return report

    @staticmethod
    def _load_default_config() -> Dict[str, Any]:
        """Load default configuration"""
        return {
            'engine': {
                'hochster_max_variables': HOCHSTER_MAX_VARIABLES,
                'lq_max_generators': LQ_MAX_GENERATORS,
                'shelling_max_facets': SHELLING_MAX_FACETS,
                'default_fields': ['q', 'f2'],
            },
            'verification': {
                'trials': 200,
                'seed': 0,
                'max_vertices': 6,
                'max_facets': 8,
                'max_graph_vertices': 7,
                'max_multiplicity': 3,
                'max_ambient': 16,
                'use_parallel_processing': False,
                'max_workers': 4,
            },
            'output': {
                'save_failures': True,
                'output_directory': './verification_results',
                'json_indent': 2,
            },
            'cache': {
                'enabled': False,
                'db_path': './cache/expansion_cache.db',
            },
            'logging': {
                'level': 'INFO',
                'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            }
        }

    def get_cache_stats(self) -> Dict[str, Any]:
        """Get cache statistics"""
        return self.cache.get_cache_stats() if self.cache else {}

    def clear_cache(self) -> bool:
        """Clear all cached Betti tables"""
        return self.cache.clear_all_cache() if self.cache else False
