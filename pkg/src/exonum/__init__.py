"""Subword-counting sequences in base 2 and Zeckendorf numeration.

The package computes the sequences ``s`` and ``s_F`` together with their
summatory functions, the signed decompositions of those summatory values,
the associated periodic fluctuation functions and a few experiments on
other numeration systems.
"""

from exonum.errors import CapacityError, DomainError, ExonumError, PrecisionError
from exonum.numeration import BASE2, FIBONACCI, QUADRIBONACCI, TRIBONACCI, rep, val
from exonum.subword import s, s_F, word_binomial
from exonum.summatory import A, A_F, B, spectral
from exonum.decomposition import b_dec, limit_digits, three_dec

__version__ = "0.1.0"

__all__ = [
    "A",
    "A_F",
    "B",
    "BASE2",
    "CapacityError",
    "DomainError",
    "ExonumError",
    "FIBONACCI",
    "PrecisionError",
    "QUADRIBONACCI",
    "TRIBONACCI",
    "b_dec",
    "limit_digits",
    "rep",
    "s",
    "s_F",
    "spectral",
    "three_dec",
    "val",
    "word_binomial",
]
