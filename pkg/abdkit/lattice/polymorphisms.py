from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from ..core.types import Relation, bits_to_int, int_to_bits


@dataclass(frozen=True)
class BoolFunction:
    """
    A Boolean function f: {0,1}^arity -> {0,1} given by its truth table.

    ``table[i]`` is the value on the argument vector whose binary reading (first argument most significant) is i.
    """

    name: str
    arity: int
    table: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(int(b) for b in self.table))
        if self.arity < 1:
            raise ValueError(f"function {self.name} must have arity >= 1")
        if len(self.table) != 2**self.arity:
            raise ValueError(f"function {self.name} needs a table of length {2 ** self.arity}, got {len(self.table)}")

    @classmethod
    def from_callable(cls, name: str, arity: int, fn: Callable[..., int]) -> "BoolFunction":
        return cls(name, arity, tuple(int(bool(fn(*int_to_bits(i, arity)))) for i in range(2**arity)))

    def __call__(self, *args: int) -> int:
        return self.table[bits_to_int(args)]


def preserves(f: BoolFunction, rel: Relation) -> bool:
    """True iff applying f coordinate-wise to any arity(f) rows of rel yields a row of rel."""
    if not rel.tuples:
        return True
    rows = np.array(rel.sorted_tuples(), dtype=np.int64)
    n_rows = rows.shape[0]
    # every arity(f)-tuple of row indices, one combination per line
    picks = np.stack(np.meshgrid(*([np.arange(n_rows)] * f.arity), indexing="ij"), axis=-1).reshape(-1, f.arity)
    index = np.zeros((picks.shape[0], rel.arity), dtype=np.int64)
    for j in range(f.arity):
        index = (index << 1) | rows[picks[:, j]]
    images = np.asarray(f.table, dtype=np.int64)[index]
    weights = 1 << np.arange(rel.arity - 1, -1, -1, dtype=np.int64)
    return bool(rel.table[images @ weights].all())


C0 = BoolFunction("c0", 1, (0, 0))
C1 = BoolFunction("c1", 1, (1, 1))
NEG = BoolFunction("neg", 1, (1, 0))
AND = BoolFunction.from_callable("and", 2, lambda x, y: x & y)
OR = BoolFunction.from_callable("or", 2, lambda x, y: x | y)
XOR2 = BoolFunction.from_callable("xor2", 2, lambda x, y: x ^ y)
XNOR2 = BoolFunction.from_callable("xnor2", 2, lambda x, y: 1 ^ x ^ y)
MAJ = BoolFunction.from_callable("maj", 3, lambda x, y, z: (x & y) | (x & z) | (y & z))
XOR3 = BoolFunction.from_callable("xor3", 3, lambda x, y, z: x ^ y ^ z)
# m1 & (m2 | ~m3) and its dual
ESS_NEG = BoolFunction.from_callable("ess_neg", 3, lambda x, y, z: x & (y | (1 - z)))
ESS_POS = BoolFunction.from_callable("ess_pos", 3, lambda x, y, z: x | (y & (1 - z)))
S10 = BoolFunction.from_callable("s10", 3, lambda x, y, z: x & (y | z))
S00 = BoolFunction.from_callable("s00", 3, lambda x, y, z: x | (y & z))
S1 = BoolFunction.from_callable("s1", 2, lambda x, y: x & (1 - y))
S0 = BoolFunction.from_callable("s0", 2, lambda x, y: x | (1 - y))


def threshold(k: int, n: int) -> BoolFunction:
    """n-ary function that is 1 iff at least k arguments are 1."""
    return BoolFunction.from_callable(f"thr{k}of{n}", n, lambda *xs: sum(xs) >= k)


def negative_width_guard(k: int) -> BoolFunction:
    # preserves negative clauses of width <= k, breaks width k+1
    return threshold(k, k + 1)


def positive_width_guard(k: int) -> BoolFunction:
    return threshold(2, k + 1)
