from .engines import ENGINES, Engine, SolveResult, VerifyReport, get_engine, pick_engine, solve, verify
from .verdicts import LABELS, Verdict, classify

__all__ = [
    "ENGINES",
    "Engine",
    "SolveResult",
    "VerifyReport",
    "get_engine",
    "pick_engine",
    "solve",
    "verify",
    "LABELS",
    "Verdict",
    "classify",
]
