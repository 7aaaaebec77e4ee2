"""Cohomology of finite Galois modules: bar-resolution engine, Tate cohomology,
transfer maps, modular composition series and closed-form local invariants."""

from .abelian import AbHom, FinAbGroup, IntMatrix, smith_normal_form
from .cohomology import (
    BudgetExceeded,
    Check,
    CohomologyResult,
    ShortExactSequence,
    cohomology,
    cohomology_full,
    connecting_hom,
    corestriction_map,
    inflation_map,
    restriction_map,
    shapiro_map,
    tate_cohomology,
)
from .gmodule import Character, FiniteGroup, GModule, dual_module, induced_module, twist

__all__ = [
    "AbHom", "BudgetExceeded", "Character", "Check", "CohomologyResult", "FinAbGroup",
    "FiniteGroup", "GModule", "IntMatrix", "ShortExactSequence", "cohomology",
    "cohomology_full", "connecting_hom", "corestriction_map", "dual_module", "induced_module",
    "inflation_map", "restriction_map", "shapiro_map", "smith_normal_form", "tate_cohomology",
    "twist",
]
