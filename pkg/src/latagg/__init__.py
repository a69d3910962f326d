"""Finite lattices whose aggregation functions are exactly their 0,1-preserving polynomials."""

from .aggregation import (
    AggFunctionTable,
    DecisionReport,
    chi,
    chi_for_any_element,
    decide_smallest_agg,
    represent_aggregation,
    synthesize_chi_polynomial,
)
from .catalog import builtin, census, enumerate_lattices
from .lattice import Lattice, from_covers, parse_lat
from .polynomials import Polynomial, evaluate, parse_term, to_table
from .properties import PropertyProfile, profile
from .relations import (
    BinaryRelation,
    Congruence,
    Tolerance,
    all_tolerances,
    has_only_trivial_tolerances,
    is_simple,
    tolerance_generated_by,
)

__version__ = "0.1.0"
