"""
Reductions from Exact abduction to weighted CNF satisfiability.

Every reduction maps a source instance with size bound s to a formula whose target weight depends on s alone,
and every model of the image lifts back to an explanation with :func:`abdkit.reductions.wsat.lift_witness`.
"""
import itertools
from typing import Dict, FrozenSet, List, Set, Tuple

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Variant
from ..lattice.coclone import closure_flags, within
from ..lattice.equality import eliminate_equality_ess_negative
from ..schaefer import forced_literals, sat_poly, to_clause_form
from ..solvers.ess_negative import negative_form, solve_ess_negative_le
from ..solvers.implication import explainer_sets, preprocess_dualhorn
from ..utils.logging_utils import init_logger
from .wsat import WsatInstance, trivially_false

logger = init_logger(__name__)


def _horn_parts(inst: AbductionInstance):
    """Implications, negative clauses and forced literals of an implicative Horn knowledge base."""
    cf = to_clause_form(inst.kb, "horn", inst.variables)
    if sat_poly(cf) is None:
        return None
    ones, zeros = forced_literals(cf)
    implications, negatives = [], []
    for clause in cf.clauses:
        neg = [v for v, sign in clause if not sign]
        pos = [v for v, sign in clause if sign]
        if pos and not neg:
            continue
        if len(pos) == 1 and len(neg) == 1:
            implications.append((neg[0], pos[0]))
        elif not pos:
            negatives.append(neg)
        else:
            raise PreconditionError(f"clause {clause} is neither an implication nor negative")
    return implications, negatives, ones, zeros


def _cover_clauses(sets: Dict[str, FrozenSet[str]], targets) -> List[Tuple]:
    return [tuple((h, True) for h in sorted(sets[m])) for m in sorted(targets)]


def _implicative_image(inst: AbductionInstance, expand_negatives: bool) -> WsatInstance:
    s = inst.require_size(Variant.Exact)
    parts = _horn_parts(inst)
    if parts is None:
        return trivially_false("knowledge base unsatisfiable")
    implications, negatives, ones, zeros = parts
    usable = inst.hypotheses - zeros
    targets = inst.manifestations - ones
    if targets & zeros:
        return trivially_false("a manifestation is forced to 0")
    reach = explainer_sets(implications, usable, inst.variables)
    if any(not reach[m] for m in targets):
        return trivially_false("some manifestation has no single explaining hypothesis")
    clauses = _cover_clauses(reach.sets, targets)
    if expand_negatives:
        for negative in negatives:
            pending = [v for v in negative if v not in ones]
            if any(not reach[v] for v in pending):
                # some variable of the clause can never be selected into 1
                continue
            for choice in itertools.product(*(sorted(reach[v]) for v in pending)):
                clauses.append(tuple((h, False) for h in set(choice)))
    logger.debug(f"implicative image: {len(clauses)} clauses over {len(usable)} hypotheses, k={s}")
    return WsatInstance.build(usable, clauses, s, "exact")


def reduce_im_eq_to_wsat(inst: AbductionInstance) -> WsatInstance:
    """One monotone clause per manifestation, listing the hypotheses that imply it; weight k = s."""
    if not within(inst.language, "IM"):
        raise PreconditionError("language is not implicative (outside IM)")
    return _implicative_image(inst, expand_negatives=False)


def reduce_is10_eq_to_wsat(inst: AbductionInstance) -> WsatInstance:
    """
    The implicative image plus the negative clauses of the knowledge base.

    A negative clause is violated once every one of its variables is reachable from the selection, so each
    variable u is replaced by every hypothesis reaching it, one copy of the clause per choice. Variables forced
    to 1 drop out of the clause; a clause with an unreachable variable can never be violated and is dropped.
    """
    if not within(inst.language, "IS10"):
        raise PreconditionError("language is not implicative Horn (outside IS10)")
    return _implicative_image(inst, expand_negatives=True)


def reduce_iv2_eq_to_wsat(inst: AbductionInstance) -> WsatInstance:
    s = inst.require_size(Variant.Exact)
    reduction = preprocess_dualhorn(inst)
    if reduction.unsat:
        return trivially_false("knowledge base unsatisfiable")
    if reduction.contradicts_manifestations:
        return trivially_false("a manifestation is forced to 0")
    sets = explainer_sets(reduction.implications, reduction.hypotheses, reduction.manifestations)
    if any(not sets[m] for m in reduction.manifestations):
        return trivially_false("some manifestation has no single explaining hypothesis")
    note = "" if reduction.manifestations else "every manifestation is forced by the knowledge base"
    return WsatInstance.build(reduction.hypotheses, _cover_clauses(sets.sets, reduction.manifestations), s, "exact", note=note)


def reduce_essneg_eq_to_wsat(inst: AbductionInstance) -> WsatInstance:
    """
    Weight k = s - |E_MP|.

    Any explanation contains E_MP = M \\ P; the remaining k hypotheses are free except that no negative clause may
    fall entirely inside E_MP, P and the selection. Literals on E_MP and P are stripped from each negative
    clause; clauses that mention a variable which cannot be selected are dropped.
    """
    s = inst.require_size(Variant.Exact)
    if not closure_flags(inst.language).ess_negative:
        raise PreconditionError("language is not essentially negative")
    if solve_ess_negative_le(inst.replace(size=s), Variant.AtMost) is None:
        return trivially_false("no explanation of size at most s")
    expanded = eliminate_equality_ess_negative(inst, Variant.Exact)
    _, P, negatives = negative_form(expanded)
    core = expanded.manifestations - P
    k = s - len(core)
    selectable: Set[str] = expanded.hypotheses - core
    clauses = []
    for negative in negatives:
        rest = negative - core - P
        if not rest:
            return trivially_false("a negative clause lies inside the forced core")
        if rest <= selectable:
            clauses.append(tuple((v, False) for v in sorted(rest)))
    if k < 0:
        return trivially_false("core larger than s")
    logger.debug(f"ess-negative image: core {sorted(core)}, k={k}, {len(clauses)} clauses")
    return WsatInstance.build(selectable, clauses, k, "exact", fixed=frozenset(core))
