"""Equality handling for the essentially negative / positive languages, where = cannot be pp-defined away."""
import itertools
from typing import Dict, List, Tuple

import networkx as nx

from ..core import relations as rels
from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase, Relation, Variant
from ..utils.logging_utils import init_logger
from .coclone import closure_flags

logger = init_logger(__name__)


def _equal_positions(rel: Relation) -> List[List[int]]:
    """Groups of coordinates that carry the same value in every tuple."""
    groups: Dict[Tuple[int, ...], List[int]] = {}
    rows = rel.sorted_tuples()
    for i in range(rel.arity):
        groups.setdefault(tuple(r[i] for r in rows), []).append(i)
    return list(groups.values())


def _projected(rel: Relation, keep: List[int]) -> Relation:
    name = f"{rel.name}_p{''.join(str(i) for i in keep)}"
    return Relation(name, len(keep), frozenset(tuple(r[i] for i in keep) for r in rel.tuples))


def split_equalities(inst: AbductionInstance) -> AbductionInstance:
    """
    Factor coordinates that a relation forces equal into explicit EQ constraints.

    R(a, b, c) with columns 0 and 2 always equal becomes EQ(a, c) and R_p01(a, b). Empty relations and
    relations without such columns are left alone.
    """
    constraints = []
    added = {}
    for c in inst.kb:
        groups = _equal_positions(c.relation)
        if c.relation.same_tuples(rels.EQ) or not c.relation.tuples or all(len(g) == 1 for g in groups):
            constraints.append(c)
            continue
        keep = sorted(g[0] for g in groups)
        projected = _projected(c.relation, keep)
        added[projected.name] = projected
        constraints.append(Constraint(projected, tuple(c.args[i] for i in keep)))
        for group in groups:
            for i in group[1:]:
                if c.args[i] != c.args[group[0]]:
                    constraints.append(Constraint(rels.EQ, (c.args[group[0]], c.args[i])))
                    added[rels.EQ.name] = rels.EQ
    if not added:
        return inst
    return inst.replace(language=inst.language.union(*added.values()), kb=KnowledgeBase(tuple(constraints)))


def equality_classes(inst: AbductionInstance) -> List[List[str]]:
    graph = nx.Graph()
    graph.add_nodes_from(inst.variables)
    graph.add_edges_from(c.args for c in inst.kb if c.relation.same_tuples(rels.EQ))
    return sorted(sorted(comp) for comp in nx.connected_components(graph))


def _representatives(
    inst: AbductionInstance, prefer_manifestations: bool = False
) -> Tuple[List[List[str]], Dict[str, str]]:
    """
    One representative per equality class: the first hypothesis, else the first member.

    With ``prefer_manifestations`` a member of both H and M wins over other hypotheses, and a manifestation
    wins over other non-hypotheses, so a collapsed manifestation keeps a name from M whenever the class allows.
    """
    classes = equality_classes(inst)
    rep = {}
    for members in classes:
        in_h = [v for v in members if v in inst.hypotheses]
        if prefer_manifestations:
            in_m = [v for v in members if v in inst.manifestations]
            in_h = [v for v in in_h if v in inst.manifestations] + [v for v in in_h if v not in inst.manifestations]
            members = in_m + [v for v in members if v not in inst.manifestations]
        chosen = in_h[0] if in_h else members[0]
        rep.update({v: chosen for v in members})
    return classes, rep


def _without_equalities(inst: AbductionInstance) -> Tuple[List[Constraint], ConstraintLanguage]:
    kept = [c for c in inst.kb if not c.relation.same_tuples(rels.EQ)]
    language = ConstraintLanguage(tuple(r for r in inst.language if not r.same_tuples(rels.EQ)))
    return kept, language


def _check_region(inst: AbductionInstance, positive: bool):
    flags = closure_flags(inst.language)
    if positive and not flags.ess_positive:
        raise PreconditionError("language is not essentially positive")
    if not positive and not flags.ess_negative:
        raise PreconditionError("language is not essentially negative")


def _forces_zero(c: Constraint, var: str) -> bool:
    """The constraint alone sets ``var`` to 0."""
    for row in c.relation.tuples:
        values = {}
        if all(values.setdefault(a, b) == b for a, b in zip(c.args, row)) and values[var] == 1:
            return False
    return True


def eliminate_equality_ess_positive(inst: AbductionInstance, variant: Variant = Variant.Exact) -> AbductionInstance:
    """
    Remove equality from an essentially positive instance without changing the answer for ``variant``.

    Each class of equal variables collapses onto one representative, a hypothesis when the class has one. The
    other hypotheses of the class stay selectable and inherit the negative units of the representative, so
    selecting them is consistent exactly when selecting the class is. Manifestations map to representatives;
    a valid explanation using a non-representative member converts into one of the same size using the
    representative.
    """
    _check_region(inst, positive=True)
    inst = split_equalities(inst)
    classes, rep = _representatives(inst)
    kept, language = _without_equalities(inst)
    constraints = [c.substitute(rep) for c in kept]
    copies = []
    for members in classes:
        r = rep[members[0]]
        zeroing = [c for c in constraints if r in c.args and _forces_zero(c, r)]
        for h in members:
            if h != r and h in inst.hypotheses:
                copies.extend(c.substitute({r: h}) for c in zeroing)
    logger.debug(f"collapsed {sum(len(m) - 1 for m in classes)} variables into equality representatives")
    return inst.replace(
        language=language,
        kb=KnowledgeBase(tuple(constraints + copies)),
        manifestations=frozenset(rep[m] for m in inst.manifestations),
    )


def eliminate_equality_ess_negative(inst: AbductionInstance, variant: Variant = Variant.AtMost) -> AbductionInstance:
    """
    Remove equality from an essentially negative instance.

    Plain and AtMost merge each class into a single variable; hypotheses shrink to the class representatives.
    Exact keeps every hypothesis of a class as its own variable and copies each constraint over all choices of
    class members, so any non-empty selection from a class behaves like the whole class.
    """
    _check_region(inst, positive=False)
    variant = Variant.parse(variant)
    inst = split_equalities(inst)
    classes, rep = _representatives(inst, prefer_manifestations=True)
    kept, language = _without_equalities(inst)
    manifestations = frozenset(rep[m] for m in inst.manifestations)
    if variant != Variant.Exact:
        hypotheses = frozenset(rep[h] for h in inst.hypotheses)
        return inst.replace(
            language=language,
            kb=KnowledgeBase(tuple(c.substitute(rep) for c in kept)),
            hypotheses=hypotheses,
            manifestations=manifestations,
        )
    choices: Dict[str, List[str]] = {}
    for members in classes:
        in_h = [v for v in members if v in inst.hypotheses]
        for v in members:
            choices[v] = in_h if in_h else [rep[v]]
    constraints = []
    seen = set()
    for c in kept:
        for args in itertools.product(*(choices[a] for a in c.args)):
            key = (c.relation.name, args)
            if key not in seen:
                seen.add(key)
                constraints.append(Constraint(c.relation, args))
    return inst.replace(language=language, kb=KnowledgeBase(tuple(constraints)), manifestations=manifestations)
