"""Exact degrees of CM 0-cycles and Fourier coefficients of incoherent Eisenstein series."""

from .algebra import InputError
from .cmfield import CMContext, build_cm, chi, rho, split_in_K
from .degree import (
    arakelov_degree,
    intersection_decomposition,
    local_length,
    point_count,
    verify_degree_fourier,
    zhat_degree,
)
from .eisenstein import b_phi_closed, b_phi_whittaker, c_phi, diff_set, whittaker_term, xi_set
from .quadfield import ImagQuad, class_number, epsilon_p, splitting_at
from .special import beta1, beta1_quadrature_oracle
from .totreal import FactoredIdeal, FElt, PrimeF, TotallyReal, build_field
from .values import DegreeValue, EisValue, LogLinear

__version__ = "0.1.0"
