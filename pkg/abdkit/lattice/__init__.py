from .coclone import (
    ClosureFlags,
    CoCloneLabel,
    closure_flags,
    coclone_contains,
    generators,
    identify_coclone,
    includes,
    within,
)
from .equality import (
    eliminate_equality_ess_negative,
    eliminate_equality_ess_positive,
    equality_classes,
    split_equalities,
)
from .polymorphisms import BoolFunction, preserves
from .ppdef import PPDefinition, construct_equality, pp_member
from .rewrite import dump_lookup, equality_lookup, load_lookup, rewrite_language

__all__ = [
    "ClosureFlags",
    "CoCloneLabel",
    "closure_flags",
    "coclone_contains",
    "generators",
    "identify_coclone",
    "includes",
    "within",
    "eliminate_equality_ess_negative",
    "eliminate_equality_ess_positive",
    "equality_classes",
    "split_equalities",
    "BoolFunction",
    "preserves",
    "PPDefinition",
    "construct_equality",
    "pp_member",
    "dump_lookup",
    "equality_lookup",
    "load_lookup",
    "rewrite_language",
]
