"""2-rainbow domination on Cartesian products of two cycles."""

from .bounds import BoundSet, bound_set, best_upper, known_exact_r2, known_gamma, lower_bound, upper_bounds
from .errors import (ApplicabilityError, CapacityError, ConstructionError, InputError, ParseError,
                     RainbowError)
from .oracle import ExactResult, exact, exact_brute, exact_dp, gamma_prism
from .patterns import Construction, Recipe, construct_upper, merge_cols, merge_rows, pattern_f1, pattern_f2
from .rdf_core import (Assignment, ColumnProfile, Dims, VerificationReport, colorset, lemma33_check,
                       neighbors, parse, serialize, verify)

__all__ = [
    "ApplicabilityError", "Assignment", "BoundSet", "CapacityError", "ColumnProfile", "Construction",
    "ConstructionError", "Dims", "ExactResult", "InputError", "ParseError", "RainbowError", "Recipe",
    "VerificationReport", "best_upper", "bound_set", "colorset", "construct_upper", "exact",
    "exact_brute", "exact_dp", "gamma_prism", "known_exact_r2", "known_gamma", "lemma33_check",
    "lower_bound", "merge_cols", "merge_rows", "neighbors", "parse", "pattern_f1", "pattern_f2",
    "serialize", "upper_bounds", "verify",
]
