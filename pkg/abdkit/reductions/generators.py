"""Hardness-side instance generators from graph problems."""
from typing import Iterable, Set, Tuple

import networkx as nx

from ..core import relations as rels
from ..core.errors import AbdSyntaxError
from ..core.types import IDENTIFIER, AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase


def parse_edges(text: str) -> nx.Graph:
    """
    Edge list ``a-b,b-c``; whitespace-separated ``a b`` pairs (one per line) are accepted as well, which is the
    layout of edge-list files.
    """
    graph = nx.Graph()
    chunks = text.replace(",", "\n").splitlines()
    for lineno, chunk in enumerate(chunks, start=1):
        chunk = chunk.split("#", 1)[0].strip()
        if not chunk:
            continue
        ends = chunk.split("-") if "-" in chunk else chunk.split()
        ends = [e.strip() for e in ends]
        if len(ends) == 1 and IDENTIFIER.match(ends[0]):
            graph.add_node(ends[0])
            continue
        if len(ends) != 2 or not all(IDENTIFIER.match(e) for e in ends):
            raise AbdSyntaxError(f"invalid edge {chunk!r}", lineno)
        graph.add_edge(*ends)
    return check_graph(graph)


def check_graph(graph: nx.Graph) -> nx.Graph:
    if nx.number_of_selfloops(graph):
        raise ValueError("graph must not contain self-loops")
    for v in graph.nodes:
        if not isinstance(v, str) or not IDENTIFIER.match(v):
            raise ValueError(f"vertex {v!r} is not a valid variable name")
    return graph


def _fresh(prefix: str, taken: Set[str]) -> str:
    name, index = prefix, 0
    while name in taken:
        index += 1
        name = f"{prefix}_{index}"
    taken.add(name)
    return name


def _edges(graph: nx.Graph) -> Iterable[Tuple[str, str]]:
    return sorted(tuple(sorted(e)) for e in graph.edges)


def gen_indset_eq(graph: nx.Graph, k: int) -> AbductionInstance:
    """
    One NAND per edge, H = vertices plus a fresh manifestation z, s = k + 1.

    z can only be explained by itself, so the other k selected vertices must be pairwise non-adjacent.
    """
    graph = check_graph(graph)
    taken = set(graph.nodes)
    z = _fresh("z", taken)
    kb = KnowledgeBase(tuple(Constraint(rels.NAND2, e) for e in _edges(graph)))
    return AbductionInstance(
        ConstraintLanguage.of(rels.NAND2),
        kb,
        hypotheses=frozenset(graph.nodes) | {z},
        manifestations=frozenset({z}),
        size=k + 1,
    )


def gen_vertexcover_le(graph: nx.Graph, k: int) -> AbductionInstance:
    """
    Vertex cover as a definite Horn instance with a single manifestation.

    Each edge variable e_i is implied by both endpoints, a chain c_i <- e_i & c_(i-1) collects all edges and the
    last chain variable is the manifestation. The first chain link is e_1 itself.
    """
    graph = check_graph(graph)
    taken = set(graph.nodes)
    constraints = []
    chain = None
    for u, v in _edges(graph):
        e = _fresh(f"e_{u}_{v}", taken)
        constraints.append(Constraint(rels.IMP, (u, e)))
        constraints.append(Constraint(rels.IMP, (v, e)))
        if chain is None:
            chain = e
        else:
            link = _fresh(f"c_{u}_{v}", taken)
            constraints.append(Constraint(rels.HORN3, (e, chain, link)))
            chain = link
    return AbductionInstance(
        ConstraintLanguage.of(rels.IMP, rels.HORN3),
        KnowledgeBase(tuple(constraints)),
        hypotheses=frozenset(graph.nodes),
        manifestations=frozenset({chain}) if chain else frozenset(),
        size=k,
    )
