import itertools
from functools import lru_cache
from typing import FrozenSet, Tuple

from .types import Relation

# A literal is (position or variable, polarity); polarity True means the positive literal.
PositionClause = FrozenSet[Tuple[int, bool]]


def _satisfied_by_all(rel: Relation, clause: PositionClause) -> bool:
    return all(any(row[i] == int(sign) for i, sign in clause) for row in rel.tuples)


@lru_cache(maxsize=None)
def prime_implicates(rel: Relation) -> Tuple[PositionClause, ...]:
    """
    All prime implicates of a relation, as clauses over coordinate positions.

    Enumerates the 3^arity clauses (each coordinate absent, positive or negative). A clause is kept when every
    tuple satisfies it and no clause obtained by dropping one literal does. The conjunction of the result is
    equivalent to the relation. The empty relation yields the single empty clause.
    """
    if not rel.tuples:
        return (frozenset(),)
    implicates = []
    for choice in itertools.product((None, True, False), repeat=rel.arity):
        clause = frozenset((i, s) for i, s in enumerate(choice) if s is not None)
        if not clause or not _satisfied_by_all(rel, clause):
            continue
        if any(_satisfied_by_all(rel, clause - {lit}) for lit in clause if len(clause) > 1):
            continue
        implicates.append(clause)
    implicates.sort(key=lambda c: (len(c), sorted(c)))
    return tuple(implicates)


def negative_width(rel: Relation) -> int:
    """Largest all-negative prime implicate of the relation (0 if none)."""
    return max((len(c) for c in prime_implicates(rel) if c and all(not s for _, s in c)), default=0)


def positive_width(rel: Relation) -> int:
    return max((len(c) for c in prime_implicates(rel) if c and all(s for _, s in c)), default=0)
