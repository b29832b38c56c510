import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from ..core.errors import PreconditionError
from ..core.types import AbductionInstance, Explanation, Variant
from ..lattice.coclone import within
from ..schaefer import ClauseForm, forced_literals, horn_minimal_model, implies_poly, sat_poly, to_clause_form
from ..utils.logging_utils import init_logger
from .bridge import extend_solution_monotone

logger = init_logger(__name__)

Implication = Tuple[str, str]


@dataclass
class ExplainerSets:
    """For each manifestation m, the hypotheses that entail m on their own."""

    sets: Dict[str, FrozenSet[str]] = field(default_factory=dict)

    def __getitem__(self, m: str) -> FrozenSet[str]:
        return self.sets[m]

    def covers(self) -> Dict[str, FrozenSet[str]]:
        """Inverse view: hypothesis -> manifestations it explains."""
        out: Dict[str, Set[str]] = {}
        for m, hs in self.sets.items():
            for h in hs:
                out.setdefault(h, set()).add(m)
        return {h: frozenset(ms) for h, ms in out.items()}


def explainer_sets(implications: Iterable[Implication], hypotheses: Iterable[str], manifestations: Iterable[str]):
    graph = nx.DiGraph()
    graph.add_edges_from(implications)
    hypotheses = set(hypotheses)
    sets = {}
    for m in sorted(set(manifestations)):
        reaching = nx.ancestors(graph, m) | {m} if m in graph else {m}
        sets[m] = frozenset(reaching & hypotheses)
    return ExplainerSets(sets)


def implications_of(cf: ClauseForm) -> List[Implication]:
    """The (x -> y) pairs of the two-literal clauses of an implicative clause form; unit clauses are skipped."""
    found = []
    for clause in cf.clauses:
        if len(clause) < 2:
            continue
        neg = [v for v, sign in clause if not sign]
        pos = [v for v, sign in clause if sign]
        if len(neg) != 1 or len(pos) != 1:
            raise PreconditionError(f"clause {clause} is not an implication")
        found.append((neg[0], pos[0]))
    return found


@dataclass
class DualHornReduction:
    """
    A dualHorn instance reduced to single-hypothesis implications.

    "implications" holds the pairs (h, m) with KB & h |= m, over usable hypotheses and the manifestations not
    already forced. "unsat" is set when the knowledge base has no model.
    """

    implications: List[Implication] = field(default_factory=list)
    hypotheses: FrozenSet[str] = frozenset()
    manifestations: FrozenSet[str] = frozenset()
    forced_true: FrozenSet[str] = frozenset()
    forced_false: FrozenSet[str] = frozenset()
    unsat: bool = False

    @property
    def contradicts_manifestations(self) -> bool:
        return self.unsat or bool(self.manifestations & self.forced_false)


def _resolve_away(clauses: Set[FrozenSet], variable: str) -> Set[FrozenSet]:
    pos = [c for c in clauses if (variable, True) in c]
    neg = [c for c in clauses if (variable, False) in c]
    rest = {c for c in clauses if (variable, True) not in c and (variable, False) not in c}
    for a, b in itertools.product(pos, neg):
        resolvent = (a - {(variable, True)}) | (b - {(variable, False)})
        if any((v, not s) in resolvent for v, s in resolvent):
            continue
        rest.add(frozenset(resolvent))
    # subsumption deletion
    return {c for c in rest if not any(o < c for o in rest)}


def preprocess_dualhorn(inst: AbductionInstance) -> DualHornReduction:
    """
    Reduce a dualHorn knowledge base to implications h -> m.

    Forced literals are propagated first, then variables outside H and M are eliminated by resolution in sorted
    order with subsumption deletion. Entailment from a consistent set of hypotheses is witnessed by a single
    hypothesis in dualHorn theories, so the implications kept are exactly the pairs (h, m) with KB & h |= m on the
    resolved clause set.
    """
    if not within(inst.language, "IV2"):
        raise PreconditionError("language is not dualHorn")
    cf = to_clause_form(inst.kb, "dual_horn", inst.variables)
    if sat_poly(cf) is None:
        return DualHornReduction(unsat=True, manifestations=inst.manifestations)
    ones, zeros = forced_literals(cf)
    clauses = set()
    for clause in cf.clauses:
        if any((v in ones) == sign and (v in ones or v in zeros) for v, sign in clause):
            continue
        clauses.add(frozenset((v, s) for v, s in clause if v not in ones and v not in zeros))
    keep = inst.hypotheses | inst.manifestations
    for v in sorted({v for c in clauses for v, _ in c} - keep):
        clauses = _resolve_away(clauses, v)
    logger.debug(f"dualHorn preprocessing left {len(clauses)} clauses over H and M")
    resolved = ClauseForm("dual_horn", tuple(tuple(sorted(c)) for c in clauses), variables=tuple(sorted(keep)))
    usable = frozenset(h for h in inst.hypotheses if h not in zeros)
    remaining = frozenset(m for m in inst.manifestations if m not in ones)
    pairs = []
    for h in sorted(usable):
        for m in sorted(remaining):
            if h != m and m not in zeros and implies_poly(resolved, [h], [m]):
                pairs.append((h, m))
    return DualHornReduction(pairs, usable, remaining, frozenset(ones), frozenset(zeros))


def _implicative_reduction(inst: AbductionInstance) -> DualHornReduction:
    """Implication graph of an IM knowledge base; reachability through any variable counts."""
    cf = to_clause_form(inst.kb, "horn", inst.variables)
    if sat_poly(cf) is None:
        return DualHornReduction(unsat=True, manifestations=inst.manifestations)
    ones, zeros = forced_literals(cf)
    return DualHornReduction(
        implications_of(cf),
        frozenset(inst.hypotheses - zeros),
        frozenset(inst.manifestations - ones),
        frozenset(ones),
        frozenset(zeros),
    )


def _cover_dp(targets: List[str], covers: Dict[str, FrozenSet[str]]) -> Optional[List[str]]:
    """Smallest set of hypotheses whose covers include every target, by DP over subsets of targets."""
    bit = {m: 1 << i for i, m in enumerate(targets)}
    masks = []
    for h in sorted(covers):
        mask = 0
        for m in covers[h]:
            mask |= bit.get(m, 0)
        if mask:
            masks.append((h, mask))
    full = (1 << len(targets)) - 1
    best: Dict[int, Tuple[int, Optional[int], Optional[str]]] = {0: (0, None, None)}
    for mask in range(full + 1):
        if mask not in best:
            continue
        cost = best[mask][0]
        for h, cover in masks:
            nxt = mask | cover
            if nxt not in best or best[nxt][0] > cost + 1:
                best[nxt] = (cost + 1, mask, h)
    if full not in best:
        return None
    chosen, mask = [], full
    while mask:
        _, prev, h = best[mask]
        chosen.append(h)
        mask = prev
    return sorted(chosen)


def solve_M_setcover(inst: AbductionInstance, variant: Variant = Variant.AtMost) -> Optional[Explanation]:
    """
    FPT in |M| for implication and dualHorn languages.

    Each hypothesis explains the manifestations reachable from it; the question becomes a set cover of M by at
    most s hypotheses, solved exactly by dynamic programming over the 2^|M| subsets. Exact answers extend the
    cover monotonically.
    """
    variant = Variant.parse(variant)
    if within(inst.language, "IM"):
        reduction = _implicative_reduction(inst)
    elif within(inst.language, "IV2"):
        reduction = preprocess_dualhorn(inst)
    else:
        raise PreconditionError("set cover over M needs an implicative or dualHorn language")
    if reduction.contradicts_manifestations:
        return None
    sets = explainer_sets(reduction.implications, reduction.hypotheses, reduction.manifestations)
    targets = sorted(reduction.manifestations)
    if any(not sets[m] for m in targets):
        return None
    cover = _cover_dp(targets, sets.covers())
    s = inst.require_size(variant)
    if cover is None or len(cover) > s:
        return None
    if variant == Variant.Exact:
        return extend_solution_monotone(inst, cover, s)
    return frozenset(cover)


def solve_definite_horn_plain(inst: AbductionInstance) -> Optional[Explanation]:
    """
    Definite Horn knowledge bases are always satisfiable and entailment grows with E, so H itself decides the
    instance; the witness is then shrunk greedily.
    """
    if not within(inst.language, "IE1"):
        raise PreconditionError("language is not definite Horn (outside IE1)")
    cf = to_clause_form(inst.kb, "horn", inst.variables)

    def explains(hyps) -> bool:
        derived = horn_minimal_model(cf.clauses, forced=hyps)
        return derived is not None and inst.manifestations <= derived

    if not explains(inst.H):
        return None
    chosen = list(inst.H)
    for h in inst.H:
        trial = [x for x in chosen if x != h]
        if explains(trial):
            chosen = trial
    return frozenset(chosen)
