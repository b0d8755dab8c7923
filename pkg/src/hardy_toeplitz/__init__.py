"""Symbol recovery for truncated Toeplitz operators on the Hardy space."""
from .berezin import berezin_transform, kernel_at
from .cli import run_check, run_subsymbol, run_tables
from .circle_fourier import (CircleGrid, HardyCoeffs, LaurentSeries, coeffs_from_grid,
                             evaluate_on_grid, multiply, riesz_project)
from .errors import HardyError
from .hardy_ops import (TruncatedOperator, apply, diagonal_symbol_recovery,
                        gamma_upper_triangular, is_toeplitz_algebraic, shift_compress,
                        toeplitz_from_symbol)
from .subsymbol import (analyticity_test, compute_h, extension_agreement,
                        partial_stabilization, sub_symbol, uniqueness_probe)
from .unbounded import c_m_table, domain_membership, factorial_apply, shift_rule

__all__ = [
    "CircleGrid", "HardyCoeffs", "HardyError", "LaurentSeries", "TruncatedOperator",
    "analyticity_test", "apply", "berezin_transform", "c_m_table", "coeffs_from_grid",
    "compute_h", "diagonal_symbol_recovery", "domain_membership", "evaluate_on_grid",
    "extension_agreement", "factorial_apply", "gamma_upper_triangular",
    "is_toeplitz_algebraic", "kernel_at", "multiply", "partial_stabilization",
    "riesz_project", "run_check", "run_subsymbol", "run_tables", "shift_compress", "shift_rule", "sub_symbol", "toeplitz_from_symbol",
    "uniqueness_probe",
]
