from typing import List, Optional, Set, Tuple

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Explanation, Variant
from ..lattice.coclone import closure_flags
from ..lattice.equality import eliminate_equality_ess_negative
from ..schaefer import ClauseForm, sat_poly, to_clause_form


def negative_form(inst: AbductionInstance) -> Tuple[ClauseForm, Set[str], List[Set[str]]]:
    """
    Split an equality-free essentially negative knowledge base into its positive units and negative clauses.

    Returns the horn clause form, the set P of positively forced unit variables and the negative clauses as
    variable sets (negative units included).
    """
    cf = to_clause_form(inst.kb, "horn", inst.variables)
    units, negatives = set(), []
    for clause in cf.clauses:
        signs = {sign for _, sign in clause}
        if signs == {True} and len(clause) == 1:
            units.add(clause[0][0])
        elif signs <= {False}:
            negatives.append({v for v, _ in clause})
        else:
            raise PreconditionError(f"clause {clause} is not essentially negative")
    return cf, units, negatives


def solve_ess_negative_le(inst: AbductionInstance, variant: Variant = Variant.AtMost) -> Optional[Explanation]:
    """
    E_MP = M \\ P is the unique cardinality-minimal candidate: each manifestation not forced by a positive
    unit can only be explained by itself.
    """
    variant = Variant.parse(variant)
    if variant == Variant.Exact:
        raise PreconditionError("the E_MP test decides Plain and AtMost only")
    if not closure_flags(inst.language).ess_negative:
        raise PreconditionError("language is not essentially negative")
    inst = eliminate_equality_ess_negative(inst, variant)
    cf, P, _ = negative_form(inst)
    core = inst.manifestations - P
    if not core <= inst.hypotheses:
        return None
    if sat_poly(cf.with_units(positive=inst.M)) is None:
        return None
    if len(core) > inst.require_size(variant):
        return None
    return frozenset(core)
