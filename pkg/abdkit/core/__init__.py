from .errors import (
    AbdkitError,
    AbdSyntaxError,
    ArityError,
    MissingLookupError,
    NotMeaningfulError,
    OracleLimitExceeded,
    PreconditionError,
    UnassignedVariableError,
    UnknownRelationError,
)
from .implicates import negative_width, positive_width, prime_implicates
from .instance_io import load_instance, parse_instance, save_instance, serialize_instance
from .oracle import (
    all_explanations,
    check_explanation,
    entails_bruteforce,
    enumerate_explanations,
    eval_constraint,
    models,
    oracle_abduce,
    sat_bruteforce,
    weight,
)
from .types import (
    AbductionInstance,
    Assignment,
    Constraint,
    ConstraintLanguage,
    Explanation,
    KnowledgeBase,
    Param,
    Relation,
    Variant,
)

__all__ = [
    "AbdkitError",
    "AbdSyntaxError",
    "ArityError",
    "MissingLookupError",
    "NotMeaningfulError",
    "OracleLimitExceeded",
    "PreconditionError",
    "UnassignedVariableError",
    "UnknownRelationError",
    "negative_width",
    "positive_width",
    "prime_implicates",
    "load_instance",
    "parse_instance",
    "save_instance",
    "serialize_instance",
    "all_explanations",
    "check_explanation",
    "entails_bruteforce",
    "enumerate_explanations",
    "eval_constraint",
    "models",
    "oracle_abduce",
    "sat_bruteforce",
    "weight",
    "AbductionInstance",
    "Assignment",
    "Constraint",
    "ConstraintLanguage",
    "Explanation",
    "KnowledgeBase",
    "Param",
    "Relation",
    "Variant",
]
