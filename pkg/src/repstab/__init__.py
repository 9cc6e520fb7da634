"""Exact representation theory of symmetric groups on power sets, square-free
polynomials and the low degrees of the Arnold algebra, with finite-window
stability checks."""

from .chars import MultiplicityTable, NotACharacterError, decompose_character
from .symcore import DegreeError, Permutation, StableLabel, SubsetVector

__version__ = "0.1.0"

__all__ = [
    "DegreeError",
    "MultiplicityTable",
    "NotACharacterError",
    "Permutation",
    "StableLabel",
    "SubsetVector",
    "decompose_character",
]
