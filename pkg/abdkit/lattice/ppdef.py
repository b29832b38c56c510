import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from ..core import relations as rels
from ..core.errors import PreconditionError
from ..core.oracle import models
from ..core.types import Constraint, ConstraintLanguage, KnowledgeBase, Relation, int_to_bits
from ..utils.config import get_settings
from ..utils.logging_utils import init_logger
from .coclone import closure_flags

logger = init_logger(__name__)

# t & ~f, the helper every not 0-valid, not 1-valid, non-complementive language defines
TRUE_FALSE = Relation("TF", 2, frozenset({(1, 0)}))


@dataclass(frozen=True)
class PPDefinition:
    """
    A primitive positive definition R(free_vars) = exists aux_vars . body.

    The body is a knowledge base over the source language (plus EQ when equality was allowed).
    """

    target: Relation
    free_vars: Tuple[str, ...]
    aux_vars: Tuple[str, ...] = ()
    body: KnowledgeBase = field(default_factory=KnowledgeBase)

    def projection(self) -> frozenset:
        variables = list(self.free_vars) + [a for a in self.aux_vars if a not in self.free_vars]
        found = models(self.body, variables)
        shift = len(variables) - len(self.free_vars)
        return frozenset(int_to_bits(int(v), len(self.free_vars)) for v in np.unique(found >> shift))

    def is_valid(self) -> bool:
        return self.projection() == self.target.tuples

    @property
    def cost(self) -> Tuple[int, int]:
        return len(self.aux_vars), len(self.body)

    @property
    def relations(self) -> List[Relation]:
        return self.body.relations

    def instantiate(self, args: Sequence[str], fresh) -> List[Constraint]:
        """Body constraints with free variables bound to ``args`` and aux variables renamed through ``fresh``."""
        mapping = dict(zip(self.free_vars, args))
        mapping.update({a: fresh(a) for a in self.aux_vars})
        return [c.substitute(mapping) for c in self.body]


def _candidates(language: Iterable[Relation], variables: Sequence[str]) -> List[Constraint]:
    found = []
    for rel in sorted(language, key=lambda r: r.name):
        for args in itertools.product(variables, repeat=rel.arity):
            found.append(Constraint(rel, args))
    return found


def _bitset(c: Constraint, variables: Sequence[str]) -> int:
    bits = 0
    for v in models(KnowledgeBase((c,)), variables):
        bits |= 1 << int(v)
    return bits


def _project(bits: int, n_vars: int, n_free: int) -> frozenset:
    shift = n_vars - n_free
    out = set()
    value = 0
    while bits:
        if bits & 1:
            out.add(int_to_bits(value >> shift, n_free))
        bits >>= 1
        value += 1
    return frozenset(out)


def _minimize(target: frozenset, body: List[int], bitsets: List[int], n_vars: int, n_free: int) -> List[int]:
    full = (1 << (2**n_vars)) - 1
    keep = list(body)
    for idx in sorted(body, reverse=True):
        trial = [i for i in keep if i != idx]
        bits = full
        for i in trial:
            bits &= bitsets[i]
        if _project(bits, n_vars, n_free) == target:
            keep = trial
    return keep


def pp_member(
    target: Relation,
    language: ConstraintLanguage,
    allow_eq: bool = False,
    max_aux: Optional[int] = None,
    max_hits: int = 64,
) -> Optional[PPDefinition]:
    """
    Bounded search for a pp-definition of ``target`` over ``language``.

    For a growing number of auxiliary variables, every way of extending the target tuples by one aux vector each is
    tried; the body is every constraint satisfied by all extended tuples. A body whose projection equals the
    target is minimised greedily. Returns None when nothing is found within ``max_aux`` (no proof of
    non-definability).
    """
    max_aux = get_settings().pp_max_aux if max_aux is None else max_aux
    relations = list(language)
    if allow_eq and rels.EQ not in relations:
        relations.append(rels.EQ)
    n_free = target.arity
    free = tuple(f"x{i + 1}" for i in range(n_free))
    rows = target.sorted_tuples()
    if not rows:
        return None
    best = None
    for n_aux in range(max_aux + 1):
        aux = tuple(f"z{i + 1}" for i in range(n_aux))
        variables = free + aux
        n_vars = len(variables)
        cands = _candidates(relations, variables)
        bitsets = [_bitset(c, variables) for c in cands]
        full = (1 << (2**n_vars)) - 1
        hits = 0
        for extension in itertools.product(range(2**n_aux), repeat=len(rows)):
            points = 0
            for row, ext in zip(rows, extension):
                value = 0
                for b in row:
                    value = (value << 1) | b
                points |= 1 << ((value << n_aux) | ext)
            body = [i for i, bits in enumerate(bitsets) if points & ~bits == 0]
            closure = full
            for i in body:
                closure &= bitsets[i]
            if _project(closure, n_vars, n_free) != target.tuples:
                continue
            body = _minimize(target.tuples, body, bitsets, n_vars, n_free)
            used = {a for i in body for a in cands[i].args}
            kept_aux = tuple(a for a in aux if a in used)
            candidate = PPDefinition(target, free, kept_aux, KnowledgeBase(tuple(cands[i] for i in body)))
            if best is None or candidate.cost < best.cost:
                best = candidate
            hits += 1
            if hits >= max_hits:
                break
        if best is not None:
            logger.debug(f"pp-definition of {target.name} found with {len(best.aux_vars)} aux variables")
            return best
    return None


def _witness_pair(rel: Relation, f) -> Optional[Tuple[tuple, tuple]]:
    rows = rel.sorted_tuples()
    for m1, m2 in itertools.product(rows, repeat=2):
        if tuple(f(a, b) for a, b in zip(m1, m2)) not in rel.tuples:
            return m1, m2
    return None


def _witness_triple(rel: Relation, f) -> Optional[Tuple[tuple, tuple, tuple]]:
    rows = rel.sorted_tuples()
    for m1, m2, m3 in itertools.product(rows, repeat=3):
        if tuple(f(a, b, c) for a, b, c in zip(m1, m2, m3)) not in rel.tuples:
            return m1, m2, m3
    return None


def _grouped(rel: Relation, key_to_var: Dict[tuple, str], keys: Sequence[tuple]) -> Constraint:
    return Constraint(rel, tuple(key_to_var[k] for k in keys))


class _Fresh:
    def __init__(self, taken: Iterable[str]):
        self.taken = set(taken)
        self.counter = 0

    def __call__(self, _name: str = "") -> str:
        while True:
            self.counter += 1
            name = f"w{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _true_false(language: ConstraintLanguage, fresh: _Fresh, t: str, f: str, max_aux: int) -> List[Constraint]:
    definition = pp_member(TRUE_FALSE, language, allow_eq=False, max_aux=max_aux)
    if definition is None:
        raise PreconditionError("t & ~f is not pp-definable within the search bound")
    return definition.instantiate((t, f), fresh)


def _inequality_gadget(language: ConstraintLanguage, max_aux: int) -> Optional[PPDefinition]:
    """x != y for languages that are neither Horn nor dualHorn (and neither 0- nor 1-valid)."""
    flags = closure_flags(language)
    if flags.complementive:
        return pp_member(rels.NEQ, language, allow_eq=False, max_aux=max_aux)
    not_horn = next(r for r in language if _witness_pair(r, lambda a, b: a & b))
    not_dual = next(r for r in language if _witness_pair(r, lambda a, b: a | b))
    m1, m2 = _witness_pair(not_horn, lambda a, b: a & b)
    m3, m4 = _witness_pair(not_dual, lambda a, b: a | b)
    fresh = _Fresh(("x", "y", "f", "t"))
    groups = {(0, 0): "f", (0, 1): "x", (1, 0): "y", (1, 1): "t"}
    body = [
        _grouped(not_horn, groups, list(zip(m1, m2))),
        _grouped(not_dual, groups, list(zip(m3, m4))),
    ]
    body += _true_false(language, fresh, "t", "f", max_aux)
    aux = tuple(sorted({a for c in body for a in c.args} - {"x", "y"}))
    return PPDefinition(rels.NEQ, ("x", "y"), aux, KnowledgeBase(tuple(body)))


def _horn_gadget(language: ConstraintLanguage, dual: bool, max_aux: int) -> PPDefinition:
    """x = y from a relation that is Horn but not essentially negative (or the dual situation)."""
    if dual:
        breaks = lambda a, b, c: a | (b & (1 - c))  # noqa: E731
        groups = {}
        for key in itertools.product((0, 1), repeat=3):
            groups[key] = "f" if key[0] == 1 else "x" if key == (0, 1, 1) else "y" if key == (0, 1, 0) else "t"
    else:
        breaks = lambda a, b, c: a & (b | (1 - c))  # noqa: E731
        groups = {}
        for key in itertools.product((0, 1), repeat=3):
            groups[key] = "f" if key[0] == 0 else "x" if key == (1, 0, 0) else "y" if key == (1, 0, 1) else "t"
    rel = next(r for r in language if _witness_triple(r, breaks))
    m1, m2, m3 = _witness_triple(rel, breaks)
    keys = list(zip(m1, m2, m3))
    swapped = {k: {"x": "y", "y": "x"}.get(v, v) for k, v in groups.items()}
    fresh = _Fresh(("x", "y", "f", "t"))
    body = [_grouped(rel, groups, keys), _grouped(rel, swapped, keys)]
    # Horn side pins t=1, f=0; the dual side pins f=1, t=0
    body += _true_false(language, fresh, "f", "t", max_aux) if dual else _true_false(language, fresh, "t", "f", max_aux)
    aux = tuple(sorted({a for c in body for a in c.args} - {"x", "y"}))
    return PPDefinition(rels.EQ, ("x", "y"), aux, KnowledgeBase(tuple(body)))


def _compose_inequalities(neq: PPDefinition) -> PPDefinition:
    # (x = y) == exists z . (x != z) & (z != y)
    fresh = _Fresh(("x", "y", "z"))
    body = neq.instantiate(("x", "z"), fresh) + neq.instantiate(("z", "y"), fresh)
    aux = tuple(sorted({a for c in body for a in c.args} - {"x", "y"}))
    return PPDefinition(rels.EQ, ("x", "y"), aux, KnowledgeBase(tuple(body)))


def construct_equality(language: ConstraintLanguage, max_aux: Optional[int] = None) -> PPDefinition:
    """
    An equality-free pp-definition of x = y over a language that is neither essentially negative nor essentially
    positive. Direct gadgets are built from polymorphism-violation witnesses where the case analysis provides
    them; sub-gadgets and the 0-/1-valid cases come from the bounded search. The cheapest valid definition wins.
    """
    flags = closure_flags(language)
    if flags.ess_negative or flags.ess_positive:
        raise PreconditionError("equality is not expressible without = in essentially negative/positive languages")
    max_aux = get_settings().pp_max_aux if max_aux is None else max_aux
    found: List[PPDefinition] = []
    if not flags.zero_valid and not flags.one_valid:
        try:
            if not flags.horn and not flags.dual_horn:
                neq = _inequality_gadget(language, max_aux)
                if neq is not None and neq.is_valid():
                    found.append(_compose_inequalities(neq))
            else:
                found.append(_horn_gadget(language, dual=not flags.horn, max_aux=max_aux))
        except PreconditionError as e:
            logger.debug(f"direct equality gadget unavailable: {e}")
    searched = pp_member(rels.EQ, language, allow_eq=False, max_aux=max_aux)
    if searched is not None:
        found.append(searched)
    found = [d for d in found if d.is_valid()]
    if not found:
        raise PreconditionError(f"no equality definition found with at most {max_aux} auxiliary variables")
    return min(found, key=lambda d: d.cost)
