"""Determinantal surfaces in P^3: family dimensions, Noether-Lefschetz data and checks."""
from detsurf.arith import TwistSum, binom, h0_twist, hom_dim
from detsurf.cohomology import (
    ComponentReport,
    build_resolution,
    closed_form_check,
    component_report,
    component_table,
    dim_det,
    verify_conjecture,
)
from detsurf.nl_lattice import quartic_divisor_degrees
from detsurf.pairs import AdmissiblePair, PairClass, enumerate_classes

__version__ = "0.1.0"

__all__ = [
    "AdmissiblePair",
    "ComponentReport",
    "PairClass",
    "TwistSum",
    "binom",
    "build_resolution",
    "closed_form_check",
    "component_report",
    "component_table",
    "dim_det",
    "enumerate_classes",
    "h0_twist",
    "hom_dim",
    "quartic_divisor_degrees",
    "verify_conjecture",
]
