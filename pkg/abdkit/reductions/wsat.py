import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..core.errors import AbdSyntaxError
from ..core.types import Assignment, Explanation
from ..utils.logging_utils import init_logger

logger = init_logger(__name__)

Literal = Tuple[str, bool]
WsatClause = Tuple[Literal, ...]

MODES = ("exact", "at_most")
POLARITIES = ("any", "monotone", "antimonotone")


def polarity_of(clauses: Iterable[WsatClause]) -> str:
    signs = {sign for clause in clauses for _, sign in clause}
    if signs == {True}:
        return "monotone"
    if signs == {False}:
        return "antimonotone"
    return "any" if signs else "monotone"


@dataclass(frozen=True)
class WsatInstance:
    """
    Weighted CNF satisfiability: is there a model of ``clauses`` setting exactly (or at most) ``k`` of
    ``variables`` to 1?

    ``fixed`` holds variables of the source abduction instance that belong to every explanation and were
    stripped from the formula; ``note`` records how a trivial image came about.
    """

    variables: Tuple[str, ...]
    clauses: Tuple[WsatClause, ...]
    k: int
    mode: str = "exact"
    width: Optional[int] = None
    polarity: str = "any"
    fixed: FrozenSet[str] = frozenset()
    note: str = ""

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown weight mode {self.mode}")
        if self.polarity not in POLARITIES:
            raise ValueError(f"unknown polarity {self.polarity}")
        if self.k < 0:
            raise ValueError("weight must be non-negative")
        known = set(self.variables)
        for clause in self.clauses:
            for v, _ in clause:
                if v not in known:
                    raise ValueError(f"clause {clause} uses undeclared variable {v}")
            if self.width is not None and len(clause) > self.width:
                raise ValueError(f"clause {clause} is wider than {self.width}")
        signs = {sign for clause in self.clauses for _, sign in clause}
        if self.polarity != "any" and signs and polarity_of(self.clauses) != self.polarity:
            raise ValueError(f"polarity {self.polarity} does not match the clause signs")

    @classmethod
    def build(cls, variables: Iterable[str], clauses: Iterable[Iterable[Literal]], k: int, mode: str = "exact", **kwargs):
        """Sorted variables, deduplicated clauses, width and polarity read off the clauses."""
        normalized = tuple(dict.fromkeys(tuple(sorted(set(c))) for c in clauses))
        width = max((len(c) for c in normalized), default=0)
        return cls(
            tuple(sorted(set(variables))),
            normalized,
            k,
            mode,
            width=width,
            polarity=polarity_of(normalized),
            **kwargs,
        )

    @property
    def is_trivially_false(self) -> bool:
        return any(len(c) == 0 for c in self.clauses)


def trivially_false(note: str = "") -> WsatInstance:
    return WsatInstance((), ((),), 0, "exact", width=0, polarity="monotone", note=note)


def trivially_true(note: str = "") -> WsatInstance:
    return WsatInstance((), (), 0, "exact", width=0, polarity="monotone", note=note)


def _satisfies(clauses: Sequence[WsatClause], true: set) -> bool:
    return all(any((v in true) == sign for v, sign in clause) for clause in clauses)


def wsat_bruteforce(w: WsatInstance) -> Optional[Assignment]:
    """First model of the required weight; candidate true-sets are visited as combinations of the sorted variables."""
    if w.is_trivially_false:
        return None
    sizes = range(w.k, w.k + 1) if w.mode == "exact" else range(0, w.k + 1)
    for size in sizes:
        for chosen in itertools.combinations(w.variables, size):
            true = set(chosen)
            if _satisfies(w.clauses, true):
                return {v: int(v in true) for v in w.variables}
    return None


def lift_witness(w: WsatInstance, sigma: Optional[Assignment]) -> Optional[Explanation]:
    """Explanation of the source instance read back from a model of its image."""
    if sigma is None:
        return None
    return frozenset(w.fixed | {v for v, value in sigma.items() if value})


def write_wsat(w: WsatInstance) -> str:
    index = {v: i + 1 for i, v in enumerate(w.variables)}
    lines = [f"c {w.note}"] if w.note else []
    lines.extend(f"c var {i} {v}" for v, i in index.items())
    if w.fixed:
        lines.append("c fixed " + " ".join(sorted(w.fixed)))
    mode = "eq" if w.mode == "exact" else "le"
    lines.append(f"p wsat {len(w.variables)} {len(w.clauses)} {w.k} {mode}")
    for clause in w.clauses:
        lines.append(" ".join([str(index[v] if sign else -index[v]) for v, sign in clause] + ["0"]))
    return "\n".join(lines) + "\n"


def parse_wsat(text: str) -> WsatInstance:
    """Read the DIMACS-like weighted CNF format back; variables without a `c var` line are named x<index>."""
    names, fixed, note = {}, set(), ""
    header = None
    clauses: List[WsatClause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        if tokens[0] == "c":
            if len(tokens) == 4 and tokens[1] == "var":
                names[int(tokens[2])] = tokens[3]
            elif len(tokens) >= 2 and tokens[1] == "fixed":
                fixed.update(tokens[2:])
            elif not note:
                note = raw[1:].strip()
            continue
        if tokens[0] == "p":
            if len(tokens) != 6 or tokens[1] != "wsat" or tokens[5] not in ("eq", "le"):
                raise AbdSyntaxError("expected `p wsat NVARS NCLAUSES K eq|le`", lineno)
            try:
                header = (int(tokens[2]), int(tokens[3]), int(tokens[4]), tokens[5])
            except ValueError:
                raise AbdSyntaxError("header counts must be integers", lineno)
            continue
        if header is None:
            raise AbdSyntaxError("clause before the `p wsat` header", lineno)
        try:
            literals = [int(t) for t in tokens]
        except ValueError:
            raise AbdSyntaxError(f"clause {raw!r} is not a list of integers", lineno)
        if literals[-1] != 0:
            raise AbdSyntaxError("clause is not 0-terminated", lineno)
        if any(abs(lit) > header[0] for lit in literals):
            raise AbdSyntaxError(f"literal out of range 1..{header[0]}", lineno)
        clauses.append(tuple((names.get(abs(lit), f"x{abs(lit)}"), lit > 0) for lit in literals[:-1]))
    if header is None:
        raise AbdSyntaxError("missing `p wsat` header")
    nvars, nclauses, k, mode = header
    if len(clauses) != nclauses:
        raise AbdSyntaxError(f"header announces {nclauses} clauses, found {len(clauses)}")
    variables = [names.get(i, f"x{i}") for i in range(1, nvars + 1)]
    logger.debug(f"parsed wsat instance with {nvars} variables and {nclauses} clauses")
    return WsatInstance(
        tuple(variables),
        tuple(clauses),
        k,
        "exact" if mode == "eq" else "at_most",
        width=max((len(c) for c in clauses), default=0),
        polarity=polarity_of(clauses),
        fixed=frozenset(fixed),
        note=note,
    )
