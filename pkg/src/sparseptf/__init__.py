"""Sparse polynomial threshold representations of Boolean functions."""

__version__ = "0.1.0"

from .core import (BooleanFunction, Ptf, Spectrum, UsageError, evaluate_ptf, format_bf,  # noqa: E402
                   hadamard_entry, parse_bf, spectrum, verify_ptf)
from .feasibility import EliminationSet, Witness, is_eliminable, ptf_from_witness  # noqa: E402
from .solvers import (GaConfig, SolveResult, b_heuristic, brute_force_density, ga_solve,  # noqa: E402
                      l_heuristic, monomial_order, three_quarters)

__all__ = [
    "BooleanFunction", "Ptf", "Spectrum", "UsageError", "evaluate_ptf", "format_bf", "hadamard_entry",
    "parse_bf", "spectrum", "verify_ptf", "EliminationSet", "Witness", "is_eliminable",
    "ptf_from_witness", "GaConfig", "SolveResult", "b_heuristic", "brute_force_density", "ga_solve",
    "l_heuristic", "monomial_order", "three_quarters",
]
