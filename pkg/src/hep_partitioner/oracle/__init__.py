"""
Test-support algorithms: reference NE, exhaustive optimum for tiny instances,
and synthetic graph generators.
"""

from .brute_force import brute_force_optimal
from .generators import NAMED_SHAPES, disjoint_union, gen_named, gen_power_law, gen_random
from .models import OptimalPartition, TinyInstance
from .reference_ne import ReferenceNE, reference_ne

__all__ = [
    "brute_force_optimal",
    "NAMED_SHAPES",
    "disjoint_union",
    "gen_named",
    "gen_power_law",
    "gen_random",
    "OptimalPartition",
    "TinyInstance",
    "ReferenceNE",
    "reference_ne",
]
