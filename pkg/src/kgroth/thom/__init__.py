from .a2 import (
    D_coeff, D_table, d_coeff, d_oracle, d_table, evaluate_expansion, ktp_a2, ktp_a2_minimal,
    ktp_a2_stable, remainder_identity_check, sign_report,
)
from .a3 import d3_table, ktp_a3
from .cohomology import DEFAULT_CONVENTION, Convention, calibrate, leading_term, ronga_tp
from .common import CoeffTable, ThomInstance, inverted_g
from .localization import localization_vs_residue, monomial_symmetric
from .sigma import ktp_sigma_r, porteous_g

__all__ = [
    "CoeffTable", "Convention", "DEFAULT_CONVENTION", "D_coeff", "D_table", "ThomInstance",
    "calibrate", "d3_table", "d_coeff", "d_oracle", "d_table", "evaluate_expansion", "inverted_g",
    "ktp_a2", "ktp_a2_minimal", "ktp_a2_stable", "ktp_a3", "ktp_sigma_r", "leading_term",
    "localization_vs_residue", "monomial_symmetric", "porteous_g", "remainder_identity_check",
    "ronga_tp", "sign_report",
]
