"""Sharp constants in derivative bounds for analytic functions with real part in h^p."""

from .closed_forms import (c_q1_odd, c_q_infty, double_factorial, fq1_even_salt,
                           fq1_even_sum, fq1_fbeta_odd, fq2_value)
from .constants import BoundQuery, ConstantRecord, bound_rhs, bloch_order_n, c_pn, domain_bound
from .kernel import fq_beta, h_factor, i_alpha, kink_points, phi_eval
from .optimizer import BetaProfile, Monotonicity, profile, scan_conjecture, stationarity_check
from .params import Params, PrecisionCtx, QuadResult

__all__ = [
    "BetaProfile", "BoundQuery", "ConstantRecord", "Monotonicity", "Params", "PrecisionCtx",
    "QuadResult", "bloch_order_n", "bound_rhs", "c_pn", "c_q1_odd", "c_q_infty",
    "domain_bound", "double_factorial", "fq1_even_salt", "fq1_even_sum", "fq1_fbeta_odd",
    "fq2_value", "fq_beta", "h_factor", "i_alpha", "kink_points", "phi_eval", "profile",
    "scan_conjecture", "stationarity_check",
]
