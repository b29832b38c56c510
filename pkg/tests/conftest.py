import random
from typing import Callable, List, Sequence

import pytest

from abdkit.core import relations as rels
from abdkit.core.types import AbductionInstance, Constraint, ConstraintLanguage, KnowledgeBase, Relation

# relation pools whose languages stay inside one region of the co-clone lattice
REGIONS = {
    "ess_positive": (rels.OR2, rels.OR3, rels.T, rels.F, rels.EQ),
    "ess_negative": (rels.NAND2, rels.NAND3, rels.T, rels.F, rels.EQ),
    "affine2": (rels.EQ, rels.NEQ, rels.T, rels.F),
    "pure_implicative": (rels.IMP,),
    "implicative": (rels.IMP, rels.T, rels.F),
    "implicative_horn": (rels.IMP, rels.NAND2, rels.NAND3, rels.T, rels.F),
    "dual_horn": (rels.DHORN3, rels.IMP, rels.OR2, rels.T, rels.F),
    "monotone_dual_horn": (rels.DHORN3, rels.IMP, rels.OR2, rels.T),
    "definite_horn": (rels.HORN3, rels.IMP, rels.T),
    "horn": (rels.HORN3, rels.IMP, rels.NAND2, rels.T, rels.F),
    "krom": (rels.OR2, rels.NAND2, rels.IMP),
    "affine": (rels.XOR3, rels.EQ, rels.F),
}


def random_instance(
    rng: random.Random,
    relations: Sequence[Relation],
    n_vars: int = 6,
    n_constraints: int = 4,
    n_hyps: int = 4,
    n_mans: int = 2,
    size=None,
) -> AbductionInstance:
    variables = [f"v{i}" for i in range(n_vars)]
    constraints = []
    for _ in range(n_constraints):
        rel = rng.choice(relations)
        constraints.append(Constraint(rel, tuple(rng.choice(variables) for _ in range(rel.arity))))
    hypotheses = rng.sample(variables, min(n_hyps, n_vars))
    manifestations = rng.sample(variables, min(n_mans, n_vars))
    if size is None:
        size = rng.randint(0, len(hypotheses))
    return AbductionInstance(
        ConstraintLanguage(tuple(relations)),
        KnowledgeBase(tuple(constraints)),
        frozenset(hypotheses),
        frozenset(manifestations),
        size,
    )


@pytest.fixture
def make_instances() -> Callable[..., List[AbductionInstance]]:
    """Seeded batches of random instances over one region's relation pool."""

    def make(region: str, count: int, seed: int = 0, **kwargs) -> List[AbductionInstance]:
        rng = random.Random(seed)
        pool = REGIONS[region]
        out = []
        for _ in range(count):
            params = {
                "n_vars": rng.randint(2, 7),
                "n_constraints": rng.randint(0, 5),
                "n_hyps": rng.randint(0, 5),
                "n_mans": rng.randint(0, 3),
            }
            params.update(kwargs)
            out.append(random_instance(rng, pool, **params))
        return out

    return make


TRAIN_TEXT = """\
# stopped train: which hypotheses explain that the train does not move?
rel IMP 2 00 01 11
rel NAND2 2 00 01 10
rel F 1 0
rel OR3_IMP 4 0000 0001 0011 0101 0111 1001 1011 1101 1111
con NAND2 moving stop
con F announcement
con IMP moving time
con IMP engineFailed announcement
con IMP trainDelayed newTime
con OR3_IMP engineFailed trainDelayed doorOpen stop
hyp time doorOpen announcement
man stop
size 1
"""


@pytest.fixture
def train_text() -> str:
    return TRAIN_TEXT


@pytest.fixture
def train_instance() -> AbductionInstance:
    from abdkit.core.instance_io import parse_instance

    return parse_instance(TRAIN_TEXT)
