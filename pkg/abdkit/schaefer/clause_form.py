from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

import galois
import numpy as np

from ..core.errors import PreconditionError
from ..core.implicates import prime_implicates
from ..core.types import KnowledgeBase, Relation
from ..lattice.coclone import closure_flags

GF2 = galois.GF(2)

Literal = Tuple[str, bool]
Clause = Tuple[Literal, ...]
# sum of the variables modulo 2 equals parity
Equation = Tuple[Tuple[str, ...], int]

KINDS = ("horn", "dual_horn", "krom", "affine")


@dataclass(frozen=True)
class ClauseForm:
    """
    Clause-level view of a knowledge base.

    "clauses" is used by horn, dual_horn and krom; "equations" by affine. "variables" lists every variable the form
    ranges over, including those no clause mentions.
    """

    kind: str
    clauses: Tuple[Clause, ...] = ()
    equations: Tuple[Equation, ...] = ()
    variables: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown clause form kind {self.kind}")
        for clause in self.clauses:
            if not fits(clause, self.kind):
                raise PreconditionError(f"clause {clause} does not fit kind {self.kind}")

    def with_units(self, positive: Iterable[str] = (), negative: Iterable[str] = ()) -> "ClauseForm":
        positive, negative = list(positive), list(negative)
        variables = tuple(sorted(set(self.variables) | set(positive) | set(negative)))
        if self.kind == "affine":
            units = tuple(((v,), 1) for v in positive) + tuple(((v,), 0) for v in negative)
            return replace(self, equations=self.equations + units, variables=variables)
        units = tuple(((v, True),) for v in positive) + tuple(((v, False),) for v in negative)
        return replace(self, clauses=self.clauses + units, variables=variables)


def fits(clause: Clause, kind: str) -> bool:
    positives = sum(1 for _, sign in clause if sign)
    if kind == "horn":
        return positives <= 1
    if kind == "dual_horn":
        return len(clause) - positives <= 1
    if kind == "krom":
        return len(clause) <= 2
    return False


def _instantiate(rel: Relation, args: Tuple[str, ...]) -> List[Clause]:
    clauses = []
    for implicate in prime_implicates(rel):
        literals = {(args[i], sign) for i, sign in implicate}
        if any((v, not s) in literals for v, s in literals):
            continue
        clauses.append(tuple(sorted(literals)))
    return clauses


@lru_cache(maxsize=None)
def affine_equations(rel: Relation) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """
    Linear system over GF(2) whose solutions are exactly the tuples of an affine relation.

    Each equation is (coefficient vector over the coordinates, right-hand side).
    """
    if not rel.tuples:
        return (((0,) * rel.arity, 1),)
    rows = np.array(rel.sorted_tuples(), dtype=np.uint8)
    diffs = rows[1:] ^ rows[0]
    if diffs.shape[0] == 0:
        diffs = np.zeros((1, rel.arity), dtype=np.uint8)
    normals = GF2(diffs).null_space()
    equations = []
    for normal in np.asarray(normals, dtype=np.uint8):
        equations.append((tuple(int(a) for a in normal), int(normal.astype(int) @ rows[0].astype(int)) % 2))
    if 2 ** (rel.arity - len(equations)) != len(rel.tuples):
        raise PreconditionError(f"relation {rel.name} is not affine")
    return tuple(equations)


def _affine_instance(rel: Relation, args: Tuple[str, ...]) -> List[Equation]:
    out = []
    for coeffs, parity in affine_equations(rel):
        count = {}
        for a, coef in zip(args, coeffs):
            if coef:
                count[a] = count.get(a, 0) ^ 1
        out.append((tuple(sorted(v for v, odd in count.items() if odd)), parity))
    return out


def to_clause_form(kb: KnowledgeBase, kind: str, variables: Optional[Iterable[str]] = None) -> ClauseForm:
    """Expand each constraint into its prime implicates (or its linear equations for the affine kind)."""
    variables = tuple(sorted(set(variables or ()) | set(kb.variables)))
    if kind == "affine":
        equations = []
        for c in kb:
            equations.extend(_affine_instance(c.relation, c.args))
        return ClauseForm("affine", equations=tuple(dict.fromkeys(equations)), variables=variables)
    clauses = []
    for c in kb:
        for clause in _instantiate(c.relation, c.args):
            if not fits(clause, kind):
                raise PreconditionError(f"{c} is not expressible as {kind} clauses")
            clauses.append(clause)
    return ClauseForm(kind, clauses=tuple(dict.fromkeys(clauses)), variables=variables)


def kind_for(language) -> str:
    """The clause form a language admits, preferring horn, then dual_horn, krom and affine."""
    flags = closure_flags(language)
    if flags.horn:
        return "horn"
    if flags.dual_horn:
        return "dual_horn"
    if flags.bijunctive:
        return "krom"
    if flags.affine:
        return "affine"
    raise PreconditionError("language is not Schaefer-tractable (outside IE2, IV2, ID2 and IL2)")
