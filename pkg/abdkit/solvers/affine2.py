import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Explanation, Relation, Variant
from ..lattice.coclone import within

_TOP = ("", "top")


@dataclass
class ClusterDecomposition:
    """
    Structure of a knowledge base built from equalities, inequalities and literals.

    "classes" partitions the variables into classes of equal value. "clusters" pairs each class with the class
    forced to the opposite value (the second side may be empty). "forced" maps variables fixed by unit clauses.
    "manifest_classes" are the classes that meet M and still need a selected hypothesis.
    """

    classes: List[FrozenSet[str]] = field(default_factory=list)
    clusters: List[Tuple[FrozenSet[str], FrozenSet[str]]] = field(default_factory=list)
    manifest_classes: List[FrozenSet[str]] = field(default_factory=list)
    forced: Dict[str, int] = field(default_factory=dict)
    # hypotheses that may join an explanation, fixed sides chosen
    pool: List[str] = field(default_factory=list)
    explainable: bool = True

    @property
    def p(self) -> int:
        return len(self.manifest_classes)

    @property
    def e_min(self) -> int:
        return self.p

    @property
    def e_max(self) -> int:
        return len(self.pool)


def _binary_equations(rel: Relation, args) -> List[Tuple[Tuple[str, ...], int]]:
    """Unit and two-variable parity equations of a relation; a 2-affine relation is their conjunction."""
    columns = list(zip(*rel.sorted_tuples()))
    equations = []
    for i, column in enumerate(columns):
        if len(set(column)) == 1:
            equations.append(((args[i],), column[0]))
    for i, j in itertools.combinations(range(rel.arity), 2):
        diff = {a ^ b for a, b in zip(columns[i], columns[j])}
        if len(diff) == 1:
            equations.append(((args[i], args[j]), diff.pop()))
    return equations


def decompose(inst: AbductionInstance) -> Optional[ClusterDecomposition]:
    """Cluster decomposition of a 2-affine instance, or None when the knowledge base is unsatisfiable."""
    if not within(inst.language, "ID1"):
        raise PreconditionError("language is not 2-affine (outside ID1)")
    graph = nx.MultiGraph()
    graph.add_nodes_from(inst.variables)
    for c in inst.kb:
        if not c.relation.tuples:
            return None
        for names, parity in _binary_equations(c.relation, c.args):
            if len(names) == 1:
                # x = c  is  x + TOP = 1 + c  with TOP fixed to 1
                graph.add_edge(names[0], _TOP, parity=1 - parity)
            elif names[0] != names[1]:
                graph.add_edge(names[0], names[1], parity=parity)
            elif parity:
                return None

    decomposition = ClusterDecomposition()
    hyps, mans = inst.hypotheses, inst.manifestations
    for component in sorted(nx.connected_components(graph), key=lambda c: sorted(map(str, c))):
        root = _TOP if _TOP in component else min(component)
        side = {root: 0}
        for u, v in nx.bfs_edges(graph, root):
            side[v] = side[u] ^ next(iter(graph[u][v].values()))["parity"]
        for u, v, parity in graph.subgraph(component).edges(data="parity"):
            if side[u] ^ side[v] != parity:
                return None
        zero = frozenset(v for v in component if side[v] == 0 and v != _TOP)
        one = frozenset(v for v in component if side[v] == 1 and v != _TOP)
        if root == _TOP:
            # side 0 agrees with TOP, so it is forced to 1
            decomposition.forced.update({v: 1 for v in zero})
            decomposition.forced.update({v: 0 for v in one})
            if one & mans:
                decomposition.explainable = False
            decomposition.pool.extend(sorted(zero & hyps))
            decomposition.classes.extend(c for c in (zero, one) if c)
            continue
        decomposition.classes.extend(c for c in (zero, one) if c)
        decomposition.clusters.append((zero, one))
        needy = [c for c in (zero, one) if c & mans]
        if len(needy) == 2:
            decomposition.explainable = False
            continue
        if needy:
            decomposition.manifest_classes.append(needy[0])
            if not needy[0] & hyps:
                decomposition.explainable = False
            decomposition.pool.extend(sorted(needy[0] & hyps))
        else:
            a, b = sorted(zero & hyps), sorted(one & hyps)
            if len(b) > len(a) or (len(b) == len(a) and b and b[0] < a[0]):
                a = b
            decomposition.pool.extend(a)
    decomposition.pool.sort()
    return decomposition


def solve_2affine(inst: AbductionInstance, variant: Variant) -> Optional[Explanation]:
    """
    Abduction over equalities, inequalities and literals.

    An explanation exists iff every class meeting M contains a hypothesis (and no cluster or forced literal
    contradicts M). The achievable sizes form the interval [p, |pool|]; witnesses take one hypothesis per manifest
    class and then fill up from the pool in lexicographic order.
    """
    variant = Variant.parse(variant)
    decomposition = decompose(inst)
    if decomposition is None or not decomposition.explainable:
        return None
    core = [min(c & inst.hypotheses) for c in decomposition.manifest_classes]
    s = inst.require_size(variant)
    if len(core) > s:
        return None
    if variant != Variant.Exact:
        return frozenset(core)
    if s > decomposition.e_max:
        return None
    chosen = list(core)
    for h in decomposition.pool:
        if len(chosen) == s:
            break
        if h not in chosen:
            chosen.append(h)
    return frozenset(chosen)


def explanation_size_range(inst: AbductionInstance) -> Optional[Tuple[int, int]]:
    decomposition = decompose(inst)
    if decomposition is None or not decomposition.explainable:
        return None
    return decomposition.e_min, decomposition.e_max
