from typing import Iterable, Optional

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Explanation
from ..lattice.coclone import within
from ..schaefer import sat_poly, to_clause_form


def abd_to_le(inst: AbductionInstance) -> AbductionInstance:
    """Plain abduction as AtMost with s = |H|: if any explanation exists, one of size at most |H| does."""
    return inst.replace(size=len(inst.hypotheses))


def extend_solution_monotone(inst: AbductionInstance, explanation: Iterable[str], target: int) -> Optional[Explanation]:
    """
    Grow a valid explanation to exactly ``target`` hypotheses.

    In dualHorn languages selecting a single extra hypothesis is consistent unless the knowledge base forces it
    to 0, and entailment only grows with E; hypotheses are added in lexicographic order.
    """
    if not within(inst.language, "IV2"):
        raise PreconditionError("monotone extension needs a dualHorn language")
    chosen = set(explanation)
    if not chosen <= inst.hypotheses or not len(chosen) <= target <= len(inst.hypotheses):
        raise PreconditionError(f"cannot extend an explanation of size {len(chosen)} to {target}")
    cf = to_clause_form(inst.kb, "dual_horn", inst.variables)
    for h in inst.H:
        if len(chosen) == target:
            break
        if h not in chosen and sat_poly(cf.with_units(positive=sorted(chosen | {h}))) is not None:
            chosen.add(h)
    return frozenset(chosen) if len(chosen) == target else None
