"""Euler-Kronecker constants and their generalizations for explicit number fields."""

from .field import NumberField, PrimeIdeal, SplittingType, enumerate_prime_ideals, parse_field, splitting_type

__all__ = [
    "NumberField",
    "PrimeIdeal",
    "SplittingType",
    "enumerate_prime_ideals",
    "parse_field",
    "splitting_type",
]
