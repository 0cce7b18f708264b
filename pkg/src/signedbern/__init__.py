"""Exact computations for signed Bernoulli convolutions at multinacci scales."""

from .algebraic import FieldElement, FieldSpec, field_spec, sign
from .asymptotics import recurrence, solve_all_roots, solve_real_root
from .measure import SignedMeasure, signed_bernoulli, unsigned_bernoulli

__version__ = "0.1.0"

__all__ = [
    "FieldElement",
    "FieldSpec",
    "SignedMeasure",
    "field_spec",
    "recurrence",
    "sign",
    "signed_bernoulli",
    "solve_all_roots",
    "solve_real_root",
    "unsigned_bernoulli",
]
