"""Sorting permutations by transpositions with an 11/8 approximation guarantee."""
from .algebra import State, extend, lower_bound, sigma_pi_inv, three_norm
from .errors import (
    GroundSetMismatch,
    IndexViolation,
    InternalConsistencyError,
    NotApplicable,
    ResourceLimit,
    SBTError,
    SearchTimeout,
)
from .oracle import build_table, exact_distance, ida_star, load_table, save_table
from .perm_core import CyclePerm, Permutation, TranspositionDesc, apply_transposition
from .solver import SortResult, diameter_bound, distance, f, sbt1375, upper_bound

__all__ = [
    "CyclePerm",
    "GroundSetMismatch",
    "IndexViolation",
    "InternalConsistencyError",
    "NotApplicable",
    "Permutation",
    "ResourceLimit",
    "SBTError",
    "SearchTimeout",
    "SortResult",
    "State",
    "TranspositionDesc",
    "apply_transposition",
    "build_table",
    "diameter_bound",
    "distance",
    "exact_distance",
    "extend",
    "f",
    "ida_star",
    "load_table",
    "lower_bound",
    "save_table",
    "sbt1375",
    "sigma_pi_inv",
    "three_norm",
    "upper_bound",
]

__version__ = "0.1.0"
