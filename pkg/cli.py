"""
Command-Line Interface for the expansion toolkit
File based access to expansions, invariants, ideals, graphs and the
verification suites
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict

import yaml

from complex_core import ComplexError, ExpansionVector, SimplicialComplex, expand
from graphs import (
    GraphError,
    closed_twins,
    graph_expand,
    graph_expand_hat,
    independence_complex,
    is_chordal,
    is_co_chordal,
    perfect_elimination_order,
)
from homology import FieldSpec, HomologyError
from ideals import (
    IdealError,
    alexander_dual_ideal,
    betti_from_linear_quotients,
    dual_j,
    facet_ideal,
    linear_quotients_order,
    stanley_reisner_ideal,
)
from serialization import (
    FormatError,
    betti_from_dict,
    betti_to_dict,
    complex_to_dict,
    graph_to_dict,
    ideal_to_dict,
    load_document,
)
from utils import dumps_canonical, setup_logging
from verification import SUITES, ExpansionVerifier, UnknownSuiteError


EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

INPUT_ERRORS = (FormatError, UnknownSuiteError, ComplexError, IdealError, GraphError, HomologyError)


def load_settings(args) -> Dict[str, Any]:
    """Configuration for this run: --config when given, else config.yaml with env overrides"""
    if args.config:
        return ExpansionVerifier.load_config(args.config)
    return ExpansionVerifier.load_env_config()


def build_verifier(args) -> ExpansionVerifier:
    return ExpansionVerifier(args.settings)


def emit(args, text: str, data: Dict[str, Any]):
    """Print text, or canonical JSON with --json; write to --out when given"""
    output = dumps_canonical(data) if args.json else text
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(output + "\n", encoding='utf-8')
    else:
        print(output)


def _expect(kind: str, expected: str, path: str):
    if kind != expected:
        raise FormatError('<root>', f"{path} holds a {kind}, expected a {expected}")


def _render_complex(delta: SimplicialComplex) -> str:
    return dumps_canonical(complex_to_dict(delta))


def run_guarded(handler):
    """Wrap a subcommand: input errors exit 2, anything else exits 1"""

    def wrapped(args) -> int:
        try:
            return handler(args)
        except INPUT_ERRORS as e:
            print(f"\n❌ ERROR: {e}", file=sys.stderr)
            return EXIT_USAGE
        except (OSError, ValueError) as e:
            print(f"\n❌ ERROR: {e}", file=sys.stderr)
            return EXIT_USAGE if isinstance(e, FileNotFoundError) else EXIT_FAILURE
        except Exception as e:
            print(f"\n❌ ERROR: {e}", file=sys.stderr)
            if args.verbose:
                import traceback
                traceback.print_exc()
            return EXIT_FAILURE

    wrapped.__doc__ = handler.__doc__
    return wrapped


@run_guarded
def expand_command(args) -> int:
    """Expand a complex by an expansion vector"""
    kind, delta = load_document(args.input)
    _expect(kind, 'complex', args.input)
    expanded = expand(delta, ExpansionVector.parse(args.alpha))
    emit(args, _render_complex(expanded), complex_to_dict(expanded))
    return EXIT_OK


def format_invariants(report: Dict[str, Any]) -> str:
    lines = [f"{report['kind'].upper()} INVARIANTS", "-" * 60]
    dimension = report['dimension']
    lines.append(f"  Dimension: {'void' if dimension is None else dimension}")
    if 'pure' not in report:
        return "\n".join(lines)
    lines.append(f"  f-vector: {report['f_vector']}")
    lines.append(f"  Pure: {report['pure']}")
    lines.append(f"  Shellable: {report['shellable']}")
    lines.append(f"  Vertex decomposable: {report['vertex_decomposable']}")
    for entry in report['fields'].values():
        lines.append("")
        lines.append(f"  Over {entry['field']}:")
        homology = ", ".join(f"H~{k}={d}" for k, d in entry['homology']['dims']) or "acyclic"
        lines.append(f"    Reduced homology: {homology}")
        lines.append(f"    Cohen-Macaulay: {entry['cohen_macaulay']}")
        lines.append(f"    Sequentially Cohen-Macaulay: {entry['sequentially_cm']}")
        if 'betti' in entry:
            lines.append(f"    Total Betti numbers: {entry['total_betti']}")
            lines.append(f"    Regularity: {entry['regularity']}  Projective dimension: {entry['projdim']}")
            lines.append("    Betti table:")
            table = betti_from_dict(entry['betti']).format_table()
            lines.extend("      " + line for line in table.splitlines())
    return "\n".join(lines)


@run_guarded
def invariants_command(args) -> int:
    """Invariant report for a complex, ideal or graph"""
    kind, document = load_document(args.input)
    fields = [FieldSpec.parse(code) for code in args.field] if args.field else None
    report = build_verifier(args).invariants(kind, document, fields)
    emit(args, format_invariants(report), report)
    return EXIT_OK


@run_guarded
def ideal_command(args) -> int:
    """Facet, Stanley-Reisner and dual ideals; linear quotients search"""
    kind, document = load_document(args.input)
    if args.operation == 'facet':
        _expect(kind, 'complex', args.input)
        ideal = facet_ideal(document)
    elif args.operation == 'sr':
        _expect(kind, 'complex', args.input)
        ideal = stanley_reisner_ideal(document)
    elif args.operation == 'dual':
        ideal = dual_j(document) if kind == 'complex' else alexander_dual_ideal(_as_ideal(kind, document, args.input))
    else:
        return _linear_quotients(args, kind, document)
    emit(args, str(ideal), ideal_to_dict(ideal))
    return EXIT_OK


def _as_ideal(kind: str, document, path: str):
    if kind == 'complex':
        return facet_ideal(document)
    _expect(kind, 'ideal', path)
    return document


def _linear_quotients(args, kind: str, document) -> int:
    ideal = _as_ideal(kind, document, args.input)
    search = linear_quotients_order(ideal)
    data: Dict[str, Any] = {'ideal': ideal_to_dict(ideal), 'decision': search.decision.value}
    lines = [f"Ideal: {ideal}", f"Linear quotients: {search.decision.value}"]
    if search.is_yes:
        certificate = search.certificate
        names = ideal.variables
        order = [[names[v] for v in sorted(g)] for g in certificate.ordered_generators]
        sets = [[names[v] for v in sorted(s)] for s in certificate.sets]
        table = betti_from_linear_quotients(certificate, ideal)
        data.update(order=order, sets=sets, betti=betti_to_dict(table), projdim=certificate.projdim())
        for generator, variables in zip(order, sets):
            lines.append(f"  {'*'.join(generator)}  set: {{{', '.join(variables)}}}")
        lines.append(f"Projective dimension: {certificate.projdim()}")
        lines.append(table.format_table())
    emit(args, "\n".join(lines), data)
    return EXIT_OK


@run_guarded
def graph_command(args) -> int:
    """Independence complex, expansions, chordality and twins of a graph"""
    kind, graph = load_document(args.input)
    _expect(kind, 'graph', args.input)
    names = graph.vertex_names

    if args.operation == 'indcomplex':
        delta = independence_complex(graph)
        emit(args, _render_complex(delta), complex_to_dict(delta))
    elif args.operation in ('expand', 'expand-hat'):
        if not args.alpha:
            raise FormatError('--alpha', "required for graph expansions")
        alpha = ExpansionVector.parse(args.alpha)
        expanded = graph_expand(graph, alpha) if args.operation == 'expand' else graph_expand_hat(graph, alpha)
        emit(args, dumps_canonical(graph_to_dict(expanded)), graph_to_dict(expanded))
    elif args.operation == 'chordal':
        order = [names[v] for v in perfect_elimination_order(graph)]
        data = {'chordal': is_chordal(graph), 'co_chordal': is_co_chordal(graph), 'elimination_order': order}
        text = (f"Chordal: {data['chordal']}\nCo-chordal: {data['co_chordal']}\n"
                f"Candidate elimination order: {', '.join(order)}")
        emit(args, text, data)
    else:
        pairs = [[names[x], names[y]] for x, y in closed_twins(graph)]
        text = "\n".join(f"{x} ~ {y}" for x, y in pairs) or "No closed twins"
        emit(args, text, {'twins': pairs})
    return EXIT_OK


@run_guarded
def verify_command(args) -> int:
    """Run one or all verification suites"""
    verifier = build_verifier(args)
    caps = verifier.suite_caps(
        max_vertices=args.max_vertices,
        max_multiplicity=args.max_mult,
        max_ambient=args.max_ambient,
    )
    names = list(SUITES) if args.suite == 'all' else [args.suite]
    if args.suite != 'all' and args.suite not in SUITES:
        raise UnknownSuiteError(f"Unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")

    reports = [verifier.verify(name, args.trials, args.seed, caps) for name in names]
    text = "\n".join(report.to_text() for report in reports)
    data = {'reports': [report.to_dict() for report in reports]}
    emit(args, text, data)
    return EXIT_OK if all(report.ok for report in reports) else EXIT_FAILURE


@run_guarded
def show_cache_stats(args) -> int:
    """Show cache statistics"""
    stats = build_verifier(args).get_cache_stats()
    lines = ["\n📦 CACHE STATISTICS", "=" * 60]
    if not stats:
        lines.append("  Cache disabled or empty")
    else:
        lines.append(f"  Betti tables: {stats.get('betti_tables', 0)}")
        for code, count in stats.get('by_field', {}).items():
            lines.append(f"    {code}: {count}")
    emit(args, "\n".join(lines), stats)
    return EXIT_OK


@run_guarded
def clear_cache(args) -> int:
    """Clear cache"""
    verifier = build_verifier(args)
    if not args.yes:
        response = input("⚠️  Clear ALL cached Betti tables? (y/N): ")
        if response.lower() != 'y':
            print("Cancelled")
            return EXIT_OK
    if verifier.clear_cache():
        print("✅ All cache cleared")
    else:
        print("Cache disabled, nothing to clear")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Expansion functor toolkit for simplicial complexes, monomial ideals and graphs',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Expand a complex
  python cli.py expand complex.json --alpha 2,1,1

  # Invariants over Q and GF(2)
  python cli.py invariants ideal.json --field q --field f2

  # Ideals and graphs
  python cli.py ideal lq complex.json
  python cli.py graph expand-hat graph.json --alpha 1,2,1

  # Randomized verification
  python cli.py verify --suite dual-betti --trials 200 --seed 7
  python cli.py verify --suite all --trials 50 --json --out report.json
        """
    )

    parser.add_argument('--config', '-c', help='Path to config file (default: config.yaml)')
    parser.add_argument('--verbose', '-v', action='store_true', help='Verbose output')

    output_options = argparse.ArgumentParser(add_help=False)
    output_options.add_argument('--json', action='store_true', help='Print JSON instead of text')
    output_options.add_argument('--out', help='Write output to this file')

    subparsers = parser.add_subparsers(dest='command', help='Command to execute')

    expand_parser = subparsers.add_parser('expand', parents=[output_options], help='Expand a complex')
    expand_parser.add_argument('input', help='Complex file')
    expand_parser.add_argument('--alpha', required=True, help='Comma separated multiplicities')
    expand_parser.set_defaults(func=expand_command)

    invariants_parser = subparsers.add_parser('invariants', parents=[output_options],
                                              help='Invariants of a complex, ideal or graph')
    invariants_parser.add_argument('input', help='Complex, ideal or graph file')
    invariants_parser.add_argument('--field', action='append', help='q, f2 or f<p> (repeatable)')
    invariants_parser.set_defaults(func=invariants_command)

    ideal_parser = subparsers.add_parser('ideal', parents=[output_options], help='Ideal constructions')
    ideal_parser.add_argument('operation', choices=['facet', 'sr', 'dual', 'lq'],
                              help='dual of a complex file gives J, the dual of its facet ideal')
    ideal_parser.add_argument('input', help='Complex or ideal file')
    ideal_parser.set_defaults(func=ideal_command)

    graph_parser = subparsers.add_parser('graph', parents=[output_options], help='Graph operations')
    graph_parser.add_argument('operation', choices=['indcomplex', 'expand', 'expand-hat', 'chordal', 'twins'])
    graph_parser.add_argument('input', help='Graph file')
    graph_parser.add_argument('--alpha', help='Comma separated multiplicities (expansions)')
    graph_parser.set_defaults(func=graph_command)

    verify_parser = subparsers.add_parser('verify', parents=[output_options], help='Run verification suites')
    verify_parser.add_argument('--suite', required=True, help=f"One of: all, {', '.join(SUITES)}")
    verify_parser.add_argument('--trials', type=int, help='Number of trials')
    verify_parser.add_argument('--seed', type=int, help='Master seed')
    verify_parser.add_argument('--max-vertices', type=int, help='Vertex cap for random complexes')
    verify_parser.add_argument('--max-mult', type=int, help='Multiplicity cap for random expansion vectors')
    verify_parser.add_argument('--max-ambient', type=int, help='Cap on expanded ambient size')
    verify_parser.set_defaults(func=verify_command)

    cache_stats_parser = subparsers.add_parser('cache-stats', parents=[output_options],
                                               help='Show cache statistics')
    cache_stats_parser.set_defaults(func=show_cache_stats)

    cache_clear_parser = subparsers.add_parser('cache-clear', help='Clear cached Betti tables')
    cache_clear_parser.add_argument('--yes', '-y', action='store_true', help='Skip confirmation')
    cache_clear_parser.set_defaults(func=clear_cache)

    return parser


def main(argv=None):
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    try:
        args.settings = load_settings(args)
    except (OSError, yaml.YAMLError) as e:
        print(f"\n❌ ERROR: Cannot load configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    setup_logging(args.settings.get('logging'), args.verbose)

    return args.func(args)


if __name__ == '__main__':
    sys.exit(main())
