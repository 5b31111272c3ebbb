"""Invariants of splice-quotient surface singularities from resolution graphs."""

__version__ = "0.1.0"

from .discgroup import Character, GroupData, HElement
from .genus import (
    GenusReport,
    euler_char_on_cycle,
    genus_report,
    h1_eigensheaf,
    h1_twisted,
    minimal_nef_correction,
    pg,
    pg_uac,
)
from .graph import QCycle, ResolutionGraph, parse_graph, unit_cycle
from .molien import (
    a_invariant,
    c_v_chi,
    c_v_chi_routes,
    group_data,
    hilbert_data,
    molien_ci,
    molien_closed,
    molien_coeffs,
    P_chi,
    truncation_m,
)
from .oracle import artin_rational, bruteforce_eigendims, oracle_verify
from .series import PolyQ, RationalFunctionQ, TruncatedSeries, polynomial_part
from .splice import (
    check_monomial_condition,
    emit_splice_system,
    find_admissible_monomial,
    v_degree,
    validate_witness,
    verify_equivariance,
)

__all__ = [
    "Character", "GroupData", "HElement", "GenusReport", "QCycle",
    "ResolutionGraph", "PolyQ", "RationalFunctionQ", "TruncatedSeries",
    "parse_graph", "unit_cycle", "euler_char_on_cycle", "genus_report",
    "h1_eigensheaf", "h1_twisted", "minimal_nef_correction", "pg", "pg_uac",
    "a_invariant", "c_v_chi", "c_v_chi_routes", "group_data", "hilbert_data",
    "molien_ci", "molien_closed", "molien_coeffs", "P_chi", "truncation_m",
    "artin_rational", "bruteforce_eigendims", "oracle_verify",
    "polynomial_part", "check_monomial_condition", "emit_splice_system",
    "find_admissible_monomial", "v_degree", "validate_witness",
    "verify_equivariance",
]
