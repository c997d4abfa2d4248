"""Transformation semigroups bounding the syntactic complexity of
finite/cofinite, reverse definite and definite regular languages."""

from .automata import Dfa, classify, complement, is_minimal, syntactic_semigroup
from .search import max_non_permutational, verify_B_maximality
from .semigroups import TransformationSemigroup, closure, idempotent_report, indecomposables
from .transforms import Transformation, compose, constant, is_permutational, parse, power
from .witnesses import build, decompose, verify_bounds, witness_dfa

__all__ = [
    "Dfa",
    "Transformation",
    "TransformationSemigroup",
    "build",
    "classify",
    "closure",
    "complement",
    "compose",
    "constant",
    "decompose",
    "idempotent_report",
    "indecomposables",
    "is_minimal",
    "is_permutational",
    "max_non_permutational",
    "parse",
    "power",
    "syntactic_semigroup",
    "verify_B_maximality",
    "verify_bounds",
    "witness_dfa",
]
