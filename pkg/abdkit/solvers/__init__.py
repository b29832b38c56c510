from .affine2 import ClusterDecomposition, decompose, explanation_size_range, solve_2affine
from .bridge import abd_to_le, extend_solution_monotone
from .enumeration import solve_by_H_enumeration, solve_by_size_enumeration
from .ess_negative import negative_form, solve_ess_negative_le
from .ess_positive import solve_ess_positive
from .implication import (
    DualHornReduction,
    ExplainerSets,
    explainer_sets,
    implications_of,
    preprocess_dualhorn,
    solve_definite_horn_plain,
    solve_M_setcover,
)

__all__ = [
    "ClusterDecomposition",
    "decompose",
    "explanation_size_range",
    "solve_2affine",
    "abd_to_le",
    "extend_solution_monotone",
    "solve_by_H_enumeration",
    "solve_by_size_enumeration",
    "negative_form",
    "solve_ess_negative_le",
    "solve_ess_positive",
    "DualHornReduction",
    "ExplainerSets",
    "explainer_sets",
    "implications_of",
    "preprocess_dualhorn",
    "solve_definite_horn_plain",
    "solve_M_setcover",
]
