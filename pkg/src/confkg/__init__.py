"""Exact bound states of the conformable fractional Klein-Gordon equation
with a generalized Hulthen scalar potential, plus numeric cross-checks."""

from .conformable import FracOrder, conf_deriv2_coefficients, conf_deriv_key, conf_deriv_limit
from .hulthen import (
    Eigenstate,
    HulthenParams,
    PotentialKind,
    effective_quantities,
    energy,
    map_parameters,
    potential,
    special_case,
    transform_x_to_z,
    transform_z_to_x,
    wavefunction,
)
from .mu_algebra import Exponent, MuTerm, MuTermSum, TermContext, differentiate, evaluate, make_term, nth_derivative
from .nu_core import NuProblem, NuSolution, build_solution, lambda_n_coeff, quantization_radical, radicand_quadratic, solve_k
from .verify import ResidualReport, fd_eigensolve_mu1, ode_residual, quantize_numeric

__version__ = "0.1.0"
