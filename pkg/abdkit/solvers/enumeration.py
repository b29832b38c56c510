import itertools
from typing import Iterable, Optional

from ..core.errors import PreconditionError
from ..core.oracle import candidate_sizes
from ..core.types import AbductionInstance, Explanation, Variant
from ..schaefer import ClauseForm, implies_poly, kind_for, sat_poly, to_clause_form
from ..utils.logging_utils import init_logger

logger = init_logger(__name__)


def _clause_form(inst: AbductionInstance) -> ClauseForm:
    try:
        kind = kind_for(inst.language)
    except PreconditionError as e:
        raise PreconditionError(f"enumeration needs a Schaefer-tractable language: {e}") from e
    return to_clause_form(inst.kb, kind, inst.variables)


def _search(inst: AbductionInstance, sizes: Iterable[int]) -> Optional[Explanation]:
    cf = _clause_form(inst)
    if sat_poly(cf) is None:
        return None
    checked = 0
    for size in sizes:
        for candidate in itertools.combinations(inst.H, size):
            checked += 1
            if sat_poly(cf.with_units(positive=candidate)) is None:
                continue
            if implies_poly(cf, candidate, inst.M):
                logger.debug(f"explanation of size {size} found after {checked} candidates")
                return frozenset(candidate)
    logger.debug(f"no explanation among {checked} candidates")
    return None


def solve_by_H_enumeration(inst: AbductionInstance, variant: Variant = Variant.Plain) -> Optional[Explanation]:
    """FPT in |H|: every size-respecting subset of H, each checked with the polynomial sat and implication tests."""
    return _search(inst, candidate_sizes(inst, Variant.parse(variant)))


def solve_by_size_enumeration(inst: AbductionInstance, variant: Variant = Variant.AtMost) -> Optional[Explanation]:
    """XP in |E|: only subsets of size at most s (AtMost) or exactly s (Exact) are inspected."""
    variant = Variant.parse(variant)
    if variant == Variant.Plain:
        raise PreconditionError("size enumeration needs a size bound (AtMost or Exact)")
    return _search(inst, candidate_sizes(inst, variant))
