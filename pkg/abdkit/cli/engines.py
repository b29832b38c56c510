from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from ..core.errors import AbdkitError, PreconditionError
from ..core.oracle import check_explanation, check_oracle_limit, oracle_abduce
from ..core.types import AbductionInstance, Explanation, Param, Variant
from ..lattice.coclone import closure_flags, within
from ..reductions import (
    lift_witness,
    reduce_essneg_eq_to_wsat,
    reduce_im_eq_to_wsat,
    reduce_is10_eq_to_wsat,
    reduce_iv2_eq_to_wsat,
    wsat_bruteforce,
)
from ..schaefer import kind_for
from ..solvers import (
    abd_to_le,
    solve_2affine,
    solve_by_H_enumeration,
    solve_by_size_enumeration,
    solve_definite_horn_plain,
    solve_ess_negative_le,
    solve_ess_positive,
    solve_M_setcover,
)
from ..utils.logging_utils import init_logger
from .verdicts import Verdict, classify

logger = init_logger(__name__)

Solver = Callable[[AbductionInstance, Variant], Optional[Explanation]]
Applies = Callable[[AbductionInstance, Variant], bool]


@dataclass(frozen=True)
class Engine:
    name: str
    solve: Solver
    applies: Applies
    # specialized, fpt, reduction or oracle
    kind: str


ENGINES: Dict[str, Engine] = {}


def register_engine(name: str, kind: str, applies: Applies):
    def wrap(fn: Solver) -> Solver:
        ENGINES[name] = Engine(name, fn, applies, kind)
        return fn

    return wrap


def get_engine(name: str) -> Engine:
    if name not in ENGINES:
        raise ValueError(f"Engine {name} does not exist.")
    return ENGINES[name]


def _flags(inst: AbductionInstance):
    return closure_flags(inst.language)


def _bounded(inst: AbductionInstance, variant: Variant):
    """Plain instances go through the AtMost bridge with s = |H|."""
    return (abd_to_le(inst), Variant.AtMost) if variant == Variant.Plain else (inst, variant)


def _schaefer(inst: AbductionInstance) -> bool:
    try:
        kind_for(inst.language)
    except PreconditionError:
        return False
    return True


@register_engine("solve_ess_positive", "specialized", lambda inst, v: _flags(inst).ess_positive)
def _ess_positive(inst, variant):
    return solve_ess_positive(*_bounded(inst, variant))


@register_engine(
    "solve_ess_negative_le", "specialized", lambda inst, v: _flags(inst).ess_negative and v != Variant.Exact
)
def _ess_negative(inst, variant):
    return solve_ess_negative_le(*_bounded(inst, variant))


@register_engine("solve_2affine", "specialized", lambda inst, v: within(inst.language, "ID1"))
def _two_affine(inst, variant):
    return solve_2affine(inst, variant)


@register_engine(
    "solve_definite_horn_plain", "specialized", lambda inst, v: v == Variant.Plain and within(inst.language, "IE1")
)
def _definite_horn(inst, variant):
    return solve_definite_horn_plain(inst)


@register_engine("solve_M_setcover", "fpt", lambda inst, v: within(inst.language, "IV2"))
def _setcover(inst, variant):
    return solve_M_setcover(*_bounded(inst, variant))


@register_engine("solve_by_H_enumeration", "fpt", lambda inst, v: _schaefer(inst))
def _h_enumeration(inst, variant):
    return solve_by_H_enumeration(inst, variant)


@register_engine("solve_by_size_enumeration", "fpt", lambda inst, v: v != Variant.Plain and _schaefer(inst))
def _size_enumeration(inst, variant):
    return solve_by_size_enumeration(inst, variant)


def wsat_reduction_for(inst: AbductionInstance):
    if _flags(inst).ess_negative:
        return reduce_essneg_eq_to_wsat
    if within(inst.language, "IM"):
        return reduce_im_eq_to_wsat
    if within(inst.language, "IS10"):
        return reduce_is10_eq_to_wsat
    if within(inst.language, "IV2"):
        return reduce_iv2_eq_to_wsat
    return None


@register_engine(
    "wsat_reduction",
    "reduction",
    lambda inst, v: v == Variant.Exact and wsat_reduction_for(inst) is not None,
)
def _wsat(inst, variant):
    reduce = wsat_reduction_for(inst)
    image = reduce(inst)
    logger.debug(f"{reduce.__name__}: {len(image.variables)} variables, {len(image.clauses)} clauses, k={image.k}")
    return lift_witness(image, wsat_bruteforce(image))


@register_engine("oracle", "oracle", lambda inst, v: True)
def _oracle(inst, variant):
    return oracle_abduce(inst, variant)


_PARAMETER_ENGINES = {
    Param.H: ["solve_by_H_enumeration"],
    Param.E: ["solve_by_size_enumeration"],
    Param.M: ["solve_M_setcover"],
    Param.V: [],
}


def auto_order(param: Param) -> List[str]:
    """Specialized polynomial solvers, then the solver for the parameter, then reductions, then brute force."""
    specialized = [name for name, e in ENGINES.items() if e.kind == "specialized"]
    reductions = [name for name, e in ENGINES.items() if e.kind == "reduction"]
    return specialized + _PARAMETER_ENGINES[Param.parse(param)] + reductions + ["oracle"]


def pick_engine(inst: AbductionInstance, variant: Variant, param: Param = Param.H) -> Engine:
    for name in auto_order(param):
        engine = get_engine(name)
        if engine.applies(inst, variant):
            return engine
    raise PreconditionError("no engine applies")


@dataclass
class SolveResult:
    answer: bool
    witness: Optional[Explanation]
    engine: str
    verdict: Optional[Verdict] = None

    def to_dict(self):
        return {
            "answer": "yes" if self.answer else "no",
            "witness": sorted(self.witness) if self.witness is not None else [],
            "verdict": self.verdict.label if self.verdict else None,
            "engine": self.engine,
            "citation": self.verdict.source if self.verdict else None,
        }


def _verdict(inst: AbductionInstance, variant: Variant, param: Param) -> Optional[Verdict]:
    try:
        return classify(inst.language, variant, param)
    except AbdkitError as e:
        logger.info(f"no verdict: {e}")
        return None


def solve(
    inst: AbductionInstance,
    variant: Variant,
    engine: str = "auto",
    param: Param = Param.H,
    oracle_limit: Optional[int] = None,
) -> SolveResult:
    variant, param = Variant.parse(variant), Param.parse(param)
    if engine == "auto":
        chosen = pick_engine(inst, variant, param)
    else:
        chosen = get_engine(engine)
        if not chosen.applies(inst, variant):
            raise PreconditionError(f"engine {chosen.name} does not apply to this instance and variant")
    if chosen.kind == "oracle":
        check_oracle_limit(inst, oracle_limit)
    logger.info(f"solving with {chosen.name}")
    witness = chosen.solve(inst, variant)
    return SolveResult(witness is not None, witness, chosen.name, _verdict(inst, variant, param))


@dataclass
class EngineOutcome:
    engine: str
    answer: Optional[bool] = None
    witness: Optional[List[str]] = None
    check: str = ""
    error: str = ""

    @property
    def failed(self) -> bool:
        return bool(self.error) or bool(self.answer and self.check != "ok")


@dataclass
class VerifyReport:
    variant: Variant
    oracle: bool
    outcomes: List[EngineOutcome] = field(default_factory=list)

    @property
    def disagreements(self) -> List[str]:
        return [o.engine for o in self.outcomes if o.failed or o.answer != self.oracle]

    @property
    def agree(self) -> bool:
        return not self.disagreements

    def to_dict(self):
        return {
            "variant": self.variant.value,
            "oracle": "yes" if self.oracle else "no",
            "agree": self.agree,
            "engines": {
                o.engine: {"answer": o.answer, "witness": o.witness, "check": o.check, "error": o.error}
                for o in self.outcomes
            },
            "disagreements": self.disagreements,
        }


def verify(inst: AbductionInstance, variant: Variant, oracle_limit: Optional[int] = None) -> VerifyReport:
    """Run every applicable engine and compare each with the brute-force oracle; witnesses are checked too."""
    variant = Variant.parse(variant)
    check_oracle_limit(inst, oracle_limit)
    truth = oracle_abduce(inst, variant, oracle_limit) is not None
    report = VerifyReport(variant, truth)
    for name, engine in ENGINES.items():
        if name == "oracle" or not engine.applies(inst, variant):
            continue
        outcome = EngineOutcome(name)
        try:
            witness = engine.solve(inst, variant)
        except AbdkitError as e:
            outcome.error = str(e)
        else:
            outcome.answer = witness is not None
            if witness is not None:
                outcome.witness = sorted(witness)
                outcome.check = check_explanation(inst, witness, variant)
        if outcome.failed or outcome.answer != truth:
            logger.warning(f"engine {name} disagrees with the oracle: {outcome}")
        report.outcomes.append(outcome)
    return report
