"""p-adic Frobenius on the middle cohomology of the mirror quintic at lambda = 0,
computed from Dwork's exponential, with a comparison against the
Kubota-Leopoldt value L_p(3, omega^-2)."""

from .brackets import bracket_F, bracket_L, d_value, delta_s, s_value
from .cohomology import (
    FrobeniusMatrix,
    MultiIndex,
    c_closed,
    c_recursive,
    first_row,
    first_row_bruteforce,
    frobenius_matrix,
    picard_fuchs_solve,
)
from .dwork import TruncationPolicy, dwork_coefficients, minus_one_identity, series_sum
from .lfunction import bernoulli_numbers, compare_delta3, lp_value, zeta_p
from .padic import Context, PadicScalar, agree_to, digits_agreed, from_rational, render_digits

__all__ = [
    "Context",
    "PadicScalar",
    "TruncationPolicy",
    "FrobeniusMatrix",
    "MultiIndex",
    "agree_to",
    "digits_agreed",
    "from_rational",
    "render_digits",
    "dwork_coefficients",
    "series_sum",
    "minus_one_identity",
    "bracket_L",
    "bracket_F",
    "delta_s",
    "d_value",
    "s_value",
    "c_recursive",
    "c_closed",
    "first_row",
    "first_row_bruteforce",
    "frobenius_matrix",
    "picard_fuchs_solve",
    "bernoulli_numbers",
    "lp_value",
    "zeta_p",
    "compare_delta3",
]
