"""Point counts of varieties over finite fields, checked against explicit
Weil-type windows, Betti-number invariants of complete intersections and
exact zeta-function bookkeeping."""

from .counter import AFFINE, PROJECTIVE, CountTable, Flags, VarietySpec, count_points, count_table, singular_census
from .ffield import FieldElement, FieldSpec, extend_field, make_field
from .invariants import Multidegree, betti_bound, primitive_betti
from .mpoly import MPoly, parse_poly

__all__ = [
    "AFFINE", "PROJECTIVE", "CountTable", "Flags", "VarietySpec", "count_points", "count_table",
    "singular_census", "FieldElement", "FieldSpec", "extend_field", "make_field", "Multidegree",
    "betti_bound", "primitive_betti", "MPoly", "parse_poly",
]

__version__ = "0.1.0"
