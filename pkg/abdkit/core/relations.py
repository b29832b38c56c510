"""Named relations used throughout the library, its tests and the instance generators."""
from typing import Sequence

from .types import Relation


def clause(name: str, signs: Sequence[bool]) -> Relation:
    """Relation of a single clause; ``signs[i]`` is True for a positive literal on coordinate i."""
    return Relation.from_predicate(name, len(signs), lambda *xs: any(bool(x) == s for x, s in zip(xs, signs)))


T = Relation("T", 1, frozenset({(1,)}))
F = Relation("F", 1, frozenset({(0,)}))
EQ = Relation("EQ", 2, frozenset({(0, 0), (1, 1)}))
NEQ = Relation("NEQ", 2, frozenset({(0, 1), (1, 0)}))
IMP = clause("IMP", (False, True))
OR2 = clause("OR2", (True, True))
NAND2 = clause("NAND2", (False, False))
OR3 = clause("OR3", (True, True, True))
NAND3 = clause("NAND3", (False, False, False))
# x & y -> z
HORN3 = clause("HORN3", (False, False, True))
# x -> y | z
DHORN3 = clause("DHORN3", (False, True, True))
# x | y | z -> w, written as three implications sharing the head
OR3_IMP = Relation.from_predicate("OR3_IMP", 4, lambda x, y, z, w: not (x or y or z) or w)
NAE3 = Relation.from_predicate("NAE3", 3, lambda x, y, z: not (x == y == z))
# {0,1}^3 without 010 and 101
DUP3 = Relation.from_predicate("DUP3", 3, lambda x, y, z: (x, y, z) not in ((0, 1, 0), (1, 0, 1)))
# x1 ^ x2 ^ x3 ^ x4 ^ 1 holds: an even number of ones, 0-valid and 1-valid
EVEN4 = Relation.from_predicate("EVEN4", 4, lambda a, b, c, d: (a ^ b ^ c ^ d) == 0)
XOR3 = Relation.from_predicate("XOR3", 3, lambda a, b, c: (a ^ b ^ c) == 1)
XNOR3 = Relation.from_predicate("XNOR3", 3, lambda a, b, c: (a ^ b ^ c) == 0)
# {000, 110, 011}
II0_BASE = Relation("II0_BASE", 3, frozenset({(0, 0, 0), (1, 1, 0), (0, 1, 1)}))
ONE_IN_3 = Relation.from_predicate("ONE_IN_3", 3, lambda x, y, z: x + y + z == 1)

STANDARD = {
    r.name: r
    for r in (
        T,
        F,
        EQ,
        NEQ,
        IMP,
        OR2,
        NAND2,
        OR3,
        NAND3,
        HORN3,
        DHORN3,
        OR3_IMP,
        NAE3,
        DUP3,
        EVEN4,
        XOR3,
        XNOR3,
        II0_BASE,
        ONE_IN_3,
    )
}
