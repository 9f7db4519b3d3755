"""Exact mapping degrees of squaring maps on compact symmetric spaces."""

__version__ = "0.1.0"

from .calculus import evaluate_expression, parse_expression
from .catalog import builtin_catalog, load, save, validate
from .cohomology import free_cohomology, splitting_rank, verify_classification
from .degree import is_gamma_canonical, mapping_degree, pick_generic

__all__ = [
    "builtin_catalog",
    "evaluate_expression",
    "free_cohomology",
    "is_gamma_canonical",
    "load",
    "mapping_degree",
    "parse_expression",
    "pick_generic",
    "save",
    "splitting_rank",
    "validate",
    "verify_classification",
]
