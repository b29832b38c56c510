from collections import deque
from typing import List, Optional, Set

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Explanation, Variant
from ..lattice.coclone import closure_flags
from ..lattice.equality import eliminate_equality_ess_positive
from ..schaefer import to_clause_form
from ..utils.logging_utils import init_logger

logger = init_logger(__name__)


def _propagate(clauses, manifestations) -> Optional[tuple]:
    """
    Unit propagation restricted as the essentially positive case needs it.

    Negative units over manifestations are left unprocessed and reported in N; every other negative unit deletes
    its literal from the positive clauses, FIFO. Returns (P, N, zeroed) or None when a clause empties.
    """
    positive: List[Set[str]] = []
    queue = deque()
    for clause in clauses:
        negatives = [v for v, sign in clause if not sign]
        if negatives and len(clause) > 1:
            raise PreconditionError(f"clause {clause} is not essentially positive")
        if negatives:
            queue.append(negatives[0])
        else:
            positive.append({v for v, _ in clause})
    zeroed: Set[str] = set()
    unprocessed: Set[str] = set()
    while queue:
        v = queue.popleft()
        if v in zeroed or v in unprocessed:
            continue
        if v in manifestations:
            unprocessed.add(v)
            continue
        zeroed.add(v)
        for clause in positive:
            clause.discard(v)
    if any(not clause for clause in positive):
        return None
    units = {next(iter(c)) for c in positive if len(c) == 1}
    if units & zeroed:
        return None
    return units, unprocessed, zeroed


def solve_ess_positive(inst: AbductionInstance, variant: Variant) -> Optional[Explanation]:
    """
    Polynomial abduction for essentially positive languages.

    After propagation only positive units P force anything, so E explains M iff M \\ P is a subset of E and E
    avoids the variables forced to 0; the Exact variant pads with further usable hypotheses.
    """
    variant = Variant.parse(variant)
    if not closure_flags(inst.language).ess_positive:
        raise PreconditionError("language is not essentially positive")
    inst = eliminate_equality_ess_positive(inst, variant)
    cf = to_clause_form(inst.kb, "dual_horn", inst.variables)
    propagated = _propagate(cf.clauses, inst.manifestations)
    if propagated is None:
        logger.debug("knowledge base is inconsistent")
        return None
    P, N, zeroed = propagated
    if N:
        return None
    usable = [h for h in inst.H if h not in zeroed]
    needed = sorted(inst.manifestations - P)
    if not set(needed) <= set(usable):
        return None
    s = inst.require_size(variant)
    if variant == Variant.Plain:
        return frozenset(needed)
    if len(needed) > s:
        return None
    if variant == Variant.AtMost:
        return frozenset(needed)
    if len(usable) < s:
        return None
    padding = [h for h in usable if h not in needed][: s - len(needed)]
    return frozenset(needed + padding)
