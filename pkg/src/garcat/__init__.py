"""Finitely aligned categories, Garside families and the invariant subspaces of their path spaces."""

__version__ = "0.1.0"

from .core import (  # noqa: F401
    CapacityError,
    Category,
    CompositionError,
    DomainError,
    Edge,
    ExplicitFinite,
    FuelExhausted,
    GarcatError,
    GraphPath,
    Morphism,
    ParseError,
    Status,
    StructuralError,
    UnsupportedClass,
    Verdict,
)
