from .clause_form import ClauseForm, affine_equations, kind_for, to_clause_form
from .sat import forced_literals, horn_minimal_model, implies_poly, sat_poly

__all__ = [
    "ClauseForm",
    "affine_equations",
    "kind_for",
    "to_clause_form",
    "forced_literals",
    "horn_minimal_model",
    "implies_poly",
    "sat_poly",
]
