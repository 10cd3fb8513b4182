"""Pisot numbers generating a fixed real number field: enumeration, gap sets and differences."""

from .errors import (
    BoundaryUndecided,
    CapExhausted,
    ConsistencyError,
    DomainError,
    PisotAtlasError,
)
from .number_field import FieldElement, NumberField, make_field, parse_field, quadratic_field, rational_field

__all__ = [
    "BoundaryUndecided",
    "CapExhausted",
    "ConsistencyError",
    "DomainError",
    "FieldElement",
    "NumberField",
    "PisotAtlasError",
    "make_field",
    "parse_field",
    "quadratic_field",
    "rational_field",
]
