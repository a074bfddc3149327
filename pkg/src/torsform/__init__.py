"""Exact computation of the torsion pairing on coinvariants of a lattice with isometry."""
from .analysis import AnalysisReport, analyze, run_analysis
from .lattice import LatticeWithIsometry, base_change, direct_sum, evaluate_form, validate
from .normalform import coinvariants, smith_form
from .pairing import pairing_matrix, pairing_value, verdicts
from .scalars import LPrime, PairingValue, lval, reduce_mod_Zl

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "LPrime",
    "LatticeWithIsometry",
    "PairingValue",
    "analyze",
    "base_change",
    "coinvariants",
    "direct_sum",
    "evaluate_form",
    "lval",
    "pairing_matrix",
    "pairing_value",
    "reduce_mod_Zl",
    "run_analysis",
    "smith_form",
    "validate",
    "verdicts",
]
