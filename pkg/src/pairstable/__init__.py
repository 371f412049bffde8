"""Stable marriage under pairwise preferences.

Classifies preference relations into six orderedness levels, checks weak,
strong and super stability, solves the tractable cases, enumerates stable
matchings exhaustively on small inputs and builds SAT hardness gadgets.
"""

from .errors import ClassGateViolation, PairstableError
from .instance import (
    GeneratorParams,
    Instance,
    Matching,
    classify_sides,
    generate_instance,
    parse_instance,
    parse_matching,
    serialize_instance,
    serialize_matching,
)
from .oracle import OracleLimits, Verdict, enumerate_stable, rural_hospitals
from .prefs import OrderClass, Relation, RelationValue, classify, normalize_relation
from .stability import StabilityNotion, blocks, find_blocking, is_stable
from .strong import solve_strong
from .superstable import solve_super
from .weak import solve_weak

__version__ = "0.1.0"

__all__ = [
    "ClassGateViolation",
    "GeneratorParams",
    "Instance",
    "Matching",
    "OracleLimits",
    "OrderClass",
    "PairstableError",
    "Relation",
    "RelationValue",
    "StabilityNotion",
    "Verdict",
    "blocks",
    "classify",
    "classify_sides",
    "enumerate_stable",
    "find_blocking",
    "generate_instance",
    "is_stable",
    "normalize_relation",
    "parse_instance",
    "parse_matching",
    "rural_hospitals",
    "serialize_instance",
    "serialize_matching",
    "solve_strong",
    "solve_super",
    "solve_weak",
]
