"""Polynomial satisfiability and implication for the Schaefer-tractable clause forms."""
from collections import deque
from typing import Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx
import numpy as np

from ..core.types import Assignment
from .clause_form import GF2, Clause, ClauseForm


def horn_minimal_model(clauses: Iterable[Clause], forced: Iterable[str] = ()) -> Optional[Set[str]]:
    """
    Least model of a Horn clause set, by counter-based unit propagation.

    Returns the set of variables true in the least model (all others 0), or None on conflict.
    """
    clauses = list(clauses)
    remaining = []
    watchers: Dict[str, List[int]] = {}
    queue = deque(forced)
    true: Set[str] = set()
    for idx, clause in enumerate(clauses):
        body = {v for v, sign in clause if not sign}
        remaining.append(len(body))
        for v in body:
            watchers.setdefault(v, []).append(idx)
        if not body:
            heads = [v for v, sign in clause if sign]
            if not heads:
                return None
            queue.append(heads[0])
    while queue:
        v = queue.popleft()
        if v in true:
            continue
        true.add(v)
        for idx in watchers.get(v, ()):
            remaining[idx] -= 1
            if remaining[idx] == 0:
                heads = [u for u, sign in clauses[idx] if sign]
                if not heads:
                    return None
                queue.append(heads[0])
    return true


def _flip(clauses: Iterable[Clause]) -> List[Clause]:
    return [tuple((v, not sign) for v, sign in clause) for clause in clauses]


def _sat_krom(cf: ClauseForm) -> Optional[Assignment]:
    graph = nx.DiGraph()
    for v in cf.variables:
        graph.add_node((v, True))
        graph.add_node((v, False))
    for clause in cf.clauses:
        if not clause:
            return None
        a, b = clause if len(clause) == 2 else (clause[0], clause[0])
        graph.add_edge((a[0], not a[1]), b)
        graph.add_edge((b[0], not b[1]), a)
    dag = nx.condensation(graph)
    component = dag.graph["mapping"]
    order = {c: i for i, c in enumerate(nx.topological_sort(dag))}
    sigma = {}
    for v in cf.variables:
        pos, neg = component[(v, True)], component[(v, False)]
        if pos == neg:
            return None
        sigma[v] = int(order[pos] > order[neg])
    return sigma


def _sat_affine(cf: ClauseForm) -> Optional[Assignment]:
    variables = list(cf.variables)
    if not cf.equations:
        return {v: 0 for v in variables}
    index = {v: i for i, v in enumerate(variables)}
    augmented = np.zeros((len(cf.equations), len(variables) + 1), dtype=np.uint8)
    for row, (names, parity) in enumerate(cf.equations):
        for v in names:
            augmented[row, index[v]] ^= 1
        augmented[row, -1] = parity
    reduced = np.asarray(GF2(augmented).row_reduce(), dtype=np.uint8)
    sigma = {v: 0 for v in variables}
    for row in reduced:
        coefficients = row[:-1]
        if not coefficients.any():
            if row[-1]:
                return None
            continue
        pivot = int(np.flatnonzero(coefficients)[0])
        sigma[variables[pivot]] = int(row[-1])
    return sigma


def sat_poly(cf: ClauseForm) -> Optional[Assignment]:
    """
    A model of the clause form, or None.

    Defaults are canonical: horn sets unforced variables to 0, dual_horn to 1, affine free variables to 0, krom
    follows the topological order of the implication graph's components.
    """
    if cf.kind == "horn":
        true = horn_minimal_model(cf.clauses)
        return None if true is None else {v: int(v in true) for v in cf.variables}
    if cf.kind == "dual_horn":
        false = horn_minimal_model(_flip(cf.clauses))
        return None if false is None else {v: int(v not in false) for v in cf.variables}
    if cf.kind == "krom":
        return _sat_krom(cf)
    return _sat_affine(cf)


def implies_poly(cf: ClauseForm, hypotheses: Iterable[str], manifestations: Iterable[str]) -> bool:
    """cf with the positive units ``hypotheses`` entails every manifestation; each check is one sat_poly call."""
    hypotheses = list(hypotheses)
    for m in manifestations:
        if sat_poly(cf.with_units(positive=hypotheses, negative=[m])) is not None:
            return False
    return True


def forced_literals(cf: ClauseForm) -> Tuple[Set[str], Set[str]]:
    """Variables true in every model and variables false in every model (cf assumed satisfiable)."""
    ones, zeros = set(), set()
    for v in cf.variables:
        if sat_poly(cf.with_units(negative=[v])) is None:
            ones.add(v)
        elif sat_poly(cf.with_units(positive=[v])) is None:
            zeros.add(v)
    return ones, zeros
