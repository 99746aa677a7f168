"""The default Garside family attached to each backend."""

from __future__ import annotations

from .artin import ArtinTits, garside_family
from .core import Category, ExplicitFinite, GraphPath
from .garside import GarsideFamily
from .kgraph import KGraph, build_garside_family


def default_family(cat: Category) -> GarsideFamily:
    """Atoms for path categories, S_P for k-graphs, divisors of Delta or
    clique products for Artin-Tits monoids, and all non-units (one per
    =*-class) for finite tables.

    Raises UnsupportedClass for Artin-Tits monoids outside the supported classes.
    """
    if isinstance(cat, KGraph):
        return build_garside_family(cat)
    if isinstance(cat, ArtinTits):
        return garside_family(cat)
    if isinstance(cat, GraphPath):
        return GarsideFamily(cat, cat.atoms, certificate="edges of the graph")
    if isinstance(cat, ExplicitFinite):
        reps = {cat.star_rep(x) for x in cat.elements() if not cat.is_unit(x)}
        return GarsideFamily(cat, reps, certificate="all non-invertible elements")
    raise TypeError(f"no default family for {type(cat).__name__}")
