"""
Brute-force ground truth.

Models are encoded as integers over a sorted variable list, first variable most significant, so increasing
integers follow lexicographic order with 0 before 1.
"""
import itertools
from typing import Dict, Iterable, Iterator, List, Optional, Sequence

import numpy as np

from ..utils.config import get_settings
from .errors import OracleLimitExceeded, UnassignedVariableError
from .types import AbductionInstance, Assignment, Constraint, Explanation, KnowledgeBase, Variant, int_to_bits


def eval_constraint(c: Constraint, sigma: Assignment) -> bool:
    try:
        row = tuple(int(sigma[a]) for a in c.args)
    except KeyError as e:
        raise UnassignedVariableError(e.args[0])
    return row in c.relation


def weight(sigma: Assignment) -> int:
    return sum(1 for v in sigma.values() if v)


def _bit_positions(variables: Sequence[str]) -> Dict[str, int]:
    n = len(variables)
    return {v: n - 1 - i for i, v in enumerate(variables)}


def mask_of(names: Iterable[str], variables: Sequence[str]) -> int:
    pos = _bit_positions(variables)
    mask = 0
    for name in names:
        mask |= 1 << pos[name]
    return mask


def models(kb: KnowledgeBase, variables: Sequence[str]) -> np.ndarray:
    """All models of ``kb`` over ``variables`` as a sorted int64 array."""
    variables = list(variables)
    missing = set(kb.variables) - set(variables)
    if missing:
        raise UnassignedVariableError(sorted(missing)[0])
    if len(variables) > 62:
        raise OracleLimitExceeded(2 ** len(variables), 2**62)
    pos = _bit_positions(variables)
    candidates = np.arange(2 ** len(variables), dtype=np.int64)
    for c in kb:
        if candidates.size == 0:
            break
        index = np.zeros_like(candidates)
        for a in c.args:
            index = (index << 1) | ((candidates >> pos[a]) & 1)
        candidates = candidates[c.relation.table[index]]
    return candidates


def to_assignment(model: int, variables: Sequence[str]) -> Assignment:
    return dict(zip(variables, int_to_bits(int(model), len(variables))))


def sat_bruteforce(kb: KnowledgeBase, variables: Optional[Sequence[str]] = None) -> Optional[Assignment]:
    variables = sorted(variables) if variables is not None else kb.variables
    found = models(kb, variables)
    if found.size == 0:
        return None
    return to_assignment(found[0], variables)


def entails_bruteforce(
    kb: KnowledgeBase,
    hypotheses: Iterable[str],
    manifestations: Iterable[str],
    variables: Optional[Sequence[str]] = None,
) -> bool:
    """True iff every model of kb plus the positive units ``hypotheses`` sets all manifestations to 1."""
    hypotheses, manifestations = set(hypotheses), set(manifestations)
    variables = sorted(set(variables or ()) | set(kb.variables) | hypotheses | manifestations)
    found = models(kb, variables)
    emask, mmask = mask_of(hypotheses, variables), mask_of(manifestations, variables)
    found = found[(found & emask) == emask]
    return bool(np.all((found & mmask) == mmask))


def check_oracle_limit(inst: AbductionInstance, limit: Optional[int] = None):
    limit = get_settings().oracle_limit if limit is None else limit
    work = 2 ** len(inst.hypotheses) * 2 ** len(inst.variables)
    if work > limit:
        raise OracleLimitExceeded(work, limit)


def candidate_sizes(inst: AbductionInstance, variant: Variant) -> range:
    n = len(inst.hypotheses)
    if variant == Variant.Plain:
        return range(0, n + 1)
    s = inst.require_size(variant)
    if variant == Variant.AtMost:
        return range(0, min(s, n) + 1)
    return range(s, s + 1) if s <= n else range(0)


def enumerate_explanations(
    inst: AbductionInstance, variant: Variant, limit: Optional[int] = None
) -> Iterator[Explanation]:
    """Every valid explanation, by increasing size and then lexicographically."""
    variant = Variant.parse(variant)
    check_oracle_limit(inst, limit)
    variables = inst.variables
    found = models(inst.kb, variables)
    mmask = mask_of(inst.manifestations, variables)
    pos = _bit_positions(variables)
    for size in candidate_sizes(inst, variant):
        for combo in itertools.combinations(inst.H, size):
            emask = 0
            for h in combo:
                emask |= 1 << pos[h]
            consistent = found[(found & emask) == emask]
            if consistent.size and np.all((consistent & mmask) == mmask):
                yield frozenset(combo)


def oracle_abduce(inst: AbductionInstance, variant: Variant, limit: Optional[int] = None) -> Optional[Explanation]:
    return next(enumerate_explanations(inst, variant, limit), None)


def all_explanations(inst: AbductionInstance, variant: Variant = Variant.Plain, limit=None) -> List[Explanation]:
    return list(enumerate_explanations(inst, variant, limit))


def check_explanation(inst: AbductionInstance, explanation: Iterable[str], variant: Optional[Variant] = None) -> str:
    """
    Check one candidate and name the first failed condition.

    Returns "ok", "not_subset", "size", "inconsistent" or "not_entailing".
    """
    E = set(explanation)
    if not E <= inst.hypotheses:
        return "not_subset"
    if variant is not None and variant != Variant.Plain:
        s = inst.require_size(variant)
        if (variant == Variant.AtMost and len(E) > s) or (variant == Variant.Exact and len(E) != s):
            return "size"
    variables = inst.variables
    found = models(inst.kb, variables)
    emask = mask_of(E, variables)
    found = found[(found & emask) == emask]
    if found.size == 0:
        return "inconsistent"
    mmask = mask_of(inst.manifestations, variables)
    if not np.all((found & mmask) == mmask):
        return "not_entailing"
    return "ok"
