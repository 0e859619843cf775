"""Exact-arithmetic toolkit for the subgroups of F_2 generated by k-th powers
of primitive elements.

Everything here is computed over exact rationals and cyclotomic integers;
there is no floating point anywhere in the core.
"""

from primpow.words import Word, Endo, Automorphism
from primpow.cyclotomic import CycNum, CycMatrix
from primpow.farey import Slope

__version__ = "0.1.0"

__all__ = [
    "Word",
    "Endo",
    "Automorphism",
    "CycNum",
    "CycMatrix",
    "Slope",
    "__version__",
]
