"""
Serialization Module - JSON file formats
Complexes, ideals, graphs, Betti tables and homology profiles, with field
level validation errors for malformed input files
"""

import json
import logging
from typing import Any, Dict, Tuple, Union

from complex_core import ComplexError, SimplicialComplex
from graphs import Graph, GraphError
from homology import BettiTable, HomologyProfile, ModuleKind
from ideals import IdealError, MonomialIdeal


logger = logging.getLogger(__name__)

Document = Union[SimplicialComplex, MonomialIdeal, Graph]


class FormatError(ValueError):
    """Raised for malformed input documents; names the offending field"""

    def __init__(self, field: str, message: str, line: int = None):
        self.field = field
        self.line = line
        location = f"line {line}, " if line is not None else ""
        super().__init__(f"{location}field '{field}': {message}")


def _string_list(data: Dict[str, Any], key: str) -> list:
    value = data.get(key)
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise FormatError(key, "expected a list of strings")
    return value


def _nested_string_lists(value: Any, key: str) -> list:
    if not isinstance(value, list):
        raise FormatError(key, "expected a list of lists of names")
    for k, item in enumerate(value):
        if not isinstance(item, list) or not all(isinstance(v, str) for v in item):
            raise FormatError(f"{key}[{k}]", "expected a list of names")
    return value


def complex_to_dict(delta: SimplicialComplex) -> Dict[str, Any]:
    """{"vertices": [...], "facets": [[...], ...]}; facets null for the void complex"""
    names = delta.vertex_names
    return {
        'vertices': list(names),
        'facets': None if delta.is_void else [[names[v] for v in sorted(f)] for f in delta.facets],
    }


def complex_from_dict(data: Dict[str, Any]) -> SimplicialComplex:
    names = _string_list(data, 'vertices')
    if data.get('facets') is None:
        if 'facets' not in data:
            raise FormatError('facets', "missing")
        return SimplicialComplex.void(names)
    facets = _nested_string_lists(data['facets'], 'facets')
    try:
        return SimplicialComplex.from_named_facets(names, facets)
    except ComplexError as e:
        raise FormatError('facets', str(e)) from None


def ideal_to_dict(ideal: MonomialIdeal) -> Dict[str, Any]:
    names = ideal.variables
    return {
        'variables': list(names),
        'generators': [[names[v] for v in sorted(g)] for g in ideal.generators],
    }


def ideal_from_dict(data: Dict[str, Any]) -> MonomialIdeal:
    names = _string_list(data, 'variables')
    generators = _nested_string_lists(data.get('generators'), 'generators')
    try:
        return MonomialIdeal.from_named_generators(names, generators)
    except IdealError as e:
        raise FormatError('generators', str(e)) from None


def graph_to_dict(graph: Graph) -> Dict[str, Any]:
    names = graph.vertex_names
    return {
        'vertices': list(names),
        'edges': [[names[u], names[v]] for u, v in graph.edges],
    }


def graph_from_dict(data: Dict[str, Any]) -> Graph:
    names = _string_list(data, 'vertices')
    edges = _nested_string_lists(data.get('edges'), 'edges')
    try:
        return Graph.from_named_edges(names, edges)
    except GraphError as e:
        raise FormatError('edges', str(e)) from None


def betti_to_dict(table: BettiTable) -> Dict[str, Any]:
    return {
        'kind': table.kind.value,
        'entries': [[i, j, v] for i, j, v in table.entries],
    }


def betti_from_dict(data: Dict[str, Any]) -> BettiTable:
    try:
        kind = ModuleKind(data.get('kind'))
    except ValueError:
        raise FormatError('kind', "expected 'ideal' or 'quotient'") from None
    entries = data.get('entries')
    if not isinstance(entries, list):
        raise FormatError('entries', "expected a list of [i, j, value] triples")
    triples = []
    for k, item in enumerate(entries):
        if not (isinstance(item, list) and len(item) == 3 and all(isinstance(x, int) for x in item)):
            raise FormatError(f"entries[{k}]", "expected [i, j, value]")
        triples.append(tuple(item))
    return BettiTable(kind, tuple(triples))


def homology_to_dict(profile: HomologyProfile) -> Dict[str, Any]:
    return {'dims': [[k, d] for k, d in profile.dims]}


def detect_kind(data: Dict[str, Any]) -> str:
    """'complex', 'ideal' or 'graph', by the document's keys"""
    if not isinstance(data, dict):
        raise FormatError('<root>', "expected a JSON object")
    if 'generators' in data:
        return 'ideal'
    if 'edges' in data:
        return 'graph'
    if 'facets' in data:
        return 'complex'
    raise FormatError('<root>', "expected one of the keys facets, generators, edges")


def document_from_dict(data: Dict[str, Any]) -> Tuple[str, Document]:
    kind = detect_kind(data)
    loader = {'complex': complex_from_dict, 'ideal': ideal_from_dict, 'graph': graph_from_dict}[kind]
    return kind, loader(data)


def document_to_dict(document: Document) -> Dict[str, Any]:
    if isinstance(document, SimplicialComplex):
        return complex_to_dict(document)
    if isinstance(document, MonomialIdeal):
        return ideal_to_dict(document)
    return graph_to_dict(document)


def load_document(file_path: str) -> Tuple[str, Document]:
    """
    Load a complex, ideal or graph file

    Args:
        file_path: Path to a JSON document

    Returns:
        (kind, parsed object)
    """
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise FormatError('<root>', e.msg, line=e.lineno) from None
    logger.debug(f"Loaded {file_path}")
    return document_from_dict(data)
