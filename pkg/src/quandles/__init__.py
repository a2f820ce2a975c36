"""Finite quandles as sequences of permutations, with tools to classify
quandles of cyclic type with several fixed points."""

from .perm import (Permutation, compose, conjugate, cycles, fixed_points, from_cycles,
                   identity, inverse, moved_points, pattern, power)
from .quandle import (AxiomViolation, Profile, Quandle, QuandleAxiomError, from_permutations,
                      from_table, infer_cyclic_type, is_cyclic_type, profile, relabel, to_table,
                      verify)

__version__ = "0.1.0"

__all__ = [
    "Permutation", "compose", "conjugate", "cycles", "fixed_points", "from_cycles", "identity",
    "inverse", "moved_points", "pattern", "power",
    "AxiomViolation", "Profile", "Quandle", "QuandleAxiomError", "from_permutations",
    "from_table", "infer_cyclic_type", "is_cyclic_type", "profile", "relabel", "to_table",
    "verify",
]
