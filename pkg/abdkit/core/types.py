import enum
import re
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ArityError, PreconditionError, UnknownRelationError

Bits = Tuple[int, ...]
Assignment = Dict[str, int]
Explanation = FrozenSet[str]

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def bits_to_int(bits: Sequence[int]) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> Bits:
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


@dataclass(frozen=True)
class Relation:
    """
    A Boolean relation of fixed arity given by its set of tuples.

    "tuples" accepts bit strings ("011") or int sequences and is normalised to a frozenset of int tuples.
    """

    name: str
    arity: int
    tuples: FrozenSet[Bits] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.arity < 1:
            raise ArityError(f"relation {self.name} must have arity >= 1, got {self.arity}")
        normalised = set()
        for t in self.tuples:
            row = tuple(int(c) for c in t)
            if len(row) != self.arity or any(b not in (0, 1) for b in row):
                raise ArityError(f"tuple {t!r} of relation {self.name} does not have length {self.arity}")
            normalised.add(row)
        object.__setattr__(self, "tuples", frozenset(normalised))

    @classmethod
    def from_predicate(cls, name: str, arity: int, predicate) -> "Relation":
        rows = [int_to_bits(v, arity) for v in range(2**arity)]
        return cls(name, arity, frozenset(r for r in rows if predicate(*r)))

    @cached_property
    def table(self) -> np.ndarray:
        # Indexed by the tuple read as a binary number, first coordinate most significant.
        table = np.zeros(2**self.arity, dtype=bool)
        for t in self.tuples:
            table[bits_to_int(t)] = True
        return table

    def sorted_tuples(self) -> List[Bits]:
        return sorted(self.tuples)

    def renamed(self, name: str) -> "Relation":
        return Relation(name, self.arity, self.tuples)

    def same_tuples(self, other: "Relation") -> bool:
        return self.arity == other.arity and self.tuples == other.tuples

    def __contains__(self, row) -> bool:
        return tuple(row) in self.tuples

    def __len__(self) -> int:
        return len(self.tuples)

    def __repr__(self) -> str:
        rows = " ".join("".join(map(str, t)) for t in self.sorted_tuples())
        return f"Relation({self.name}/{self.arity}: {rows})"


@dataclass(frozen=True)
class ConstraintLanguage:
    relations: Tuple[Relation, ...] = ()

    def __post_init__(self):
        by_name: Dict[str, Relation] = {}
        for rel in self.relations:
            known = by_name.get(rel.name)
            if known is not None and not known.same_tuples(rel):
                raise ValueError(f"relation name {rel.name} is used for two different relations")
            by_name[rel.name] = rel
        object.__setattr__(self, "relations", tuple(by_name[n] for n in sorted(by_name)))

    @classmethod
    def of(cls, *relations: Relation) -> "ConstraintLanguage":
        return cls(tuple(relations))

    def __iter__(self) -> Iterator[Relation]:
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def __contains__(self, rel) -> bool:
        if isinstance(rel, str):
            return any(r.name == rel for r in self.relations)
        return any(r == rel for r in self.relations)

    def __getitem__(self, name: str) -> Relation:
        for rel in self.relations:
            if rel.name == name:
                return rel
        raise UnknownRelationError(f"unknown relation {name}")

    @property
    def names(self) -> List[str]:
        return [r.name for r in self.relations]

    @property
    def max_arity(self) -> int:
        return max((r.arity for r in self.relations), default=0)

    def union(self, *relations: Relation) -> "ConstraintLanguage":
        return ConstraintLanguage(self.relations + tuple(relations))


@dataclass(frozen=True)
class Constraint:
    relation: Relation
    args: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if len(self.args) != self.relation.arity:
            raise ArityError(
                f"relation {self.relation.name} has arity {self.relation.arity}, got {len(self.args)} arguments"
            )

    def substitute(self, mapping: Dict[str, str]) -> "Constraint":
        return Constraint(self.relation, tuple(mapping.get(a, a) for a in self.args))

    def __repr__(self) -> str:
        return f"{self.relation.name}({', '.join(self.args)})"


@dataclass(frozen=True)
class KnowledgeBase:
    constraints: Tuple[Constraint, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))

    def __iter__(self) -> Iterator[Constraint]:
        return iter(self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    @property
    def variables(self) -> List[str]:
        return sorted({a for c in self.constraints for a in c.args})

    @property
    def relations(self) -> List[Relation]:
        seen = {}
        for c in self.constraints:
            seen.setdefault(c.relation.name, c.relation)
        return [seen[n] for n in sorted(seen)]

    def extend(self, constraints: Iterable[Constraint]) -> "KnowledgeBase":
        return KnowledgeBase(self.constraints + tuple(constraints))

    def substitute(self, mapping: Dict[str, str]) -> "KnowledgeBase":
        return KnowledgeBase(tuple(c.substitute(mapping) for c in self.constraints))


class Variant(str, enum.Enum):
    Plain = "plain"
    AtMost = "le"
    Exact = "eq"

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        for v in cls:
            if value in (v.value, v.name, v.name.lower()):
                return v
        raise ValueError(f"unknown variant {value!r}, expected one of plain, le, eq")


class Param(str, enum.Enum):
    H = "H"
    M = "M"
    V = "V"
    E = "E"

    @classmethod
    def parse(cls, value) -> "Param":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown parameter {value!r}, expected one of H, M, V, E")


@dataclass(frozen=True)
class AbductionInstance:
    """
    An abduction instance <V, H, M, KB, s>.

    V is derived: the variables of the knowledge base together with H and M.
    H and M may overlap. "size" is only read by the AtMost and Exact variants.
    """

    language: ConstraintLanguage
    kb: KnowledgeBase
    hypotheses: FrozenSet[str] = frozenset()
    manifestations: FrozenSet[str] = frozenset()
    size: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "hypotheses", frozenset(self.hypotheses))
        object.__setattr__(self, "manifestations", frozenset(self.manifestations))
        for c in self.kb:
            if c.relation not in self.language:
                raise UnknownRelationError(f"relation {c.relation.name} is not part of the instance language")
        if self.size is not None and self.size < 0:
            raise ValueError(f"size must be non-negative, got {self.size}")

    @cached_property
    def variables(self) -> List[str]:
        return sorted(set(self.kb.variables) | self.hypotheses | self.manifestations)

    @property
    def H(self) -> List[str]:
        return sorted(self.hypotheses)

    @property
    def M(self) -> List[str]:
        return sorted(self.manifestations)

    def require_size(self, variant: Variant) -> int:
        if variant == Variant.Plain:
            return len(self.hypotheses)
        if self.size is None:
            raise PreconditionError(f"variant {variant.value} needs a size bound")
        return self.size

    def replace(self, **changes) -> "AbductionInstance":
        return replace(self, **changes)
