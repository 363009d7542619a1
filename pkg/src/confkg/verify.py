"""Numeric oracles that check the closed forms independently.

* :func:`ode_residual` plugs a constructed ``(E, psi)`` pair into the
  transformed second-order equation using exact derivatives.
* :func:`quantize_numeric` finds the root of ``lambda(R) - lambda_n(R)`` with
  a bracketing solver instead of the affine closed solution.
* :func:`fd_eigensolve_mu1` discretizes the ``mu = 1`` equation in ``x`` and
  diagonalizes it, independent of the NU machinery altogether.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .errors import ConvergenceError, DomainError, NoBracket
from .hulthen import Eigenstate, HulthenParams
from .mu_algebra import MuTermSum, differentiate
from .nu_core import lambda_n_of_R, lambda_of_R

RESIDUAL_TOL = 1e-8
ENDPOINT_MARGIN = 1e-4
#: Lower end of the log-spaced residual grid, relative to ``z_max``.
GRID_DECADES = 6


@dataclass
class ResidualReport:
    grid: list
    max_rel_residual: float
    scale: float
    tolerance: float = RESIDUAL_TOL
    degenerate: bool = False
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.max_rel_residual <= self.tolerance

    def to_dict(self, with_grid: bool = False) -> dict:
        d = asdict(self)
        if not with_grid:
            d.pop("grid")
        return d


def residual_grid(p: HulthenParams, grid_size: int = 200) -> np.ndarray:
    zmax = p.z_max
    lo = zmax * 10.0 ** (-GRID_DECADES)
    return np.geomspace(lo * (1 + ENDPOINT_MARGIN), zmax * (1 - ENDPOINT_MARGIN), grid_size)


def ode_residual(
    psi: MuTermSum,
    state: Eigenstate,
    p: HulthenParams,
    grid_size: int = 200,
    tolerance: float = RESIDUAL_TOL,
    grid=None,
) -> ResidualReport:
    """Defect of ``psi'' + (2-mu)/z psi' + sigma~/(z (S0 - q z^mu))^2 psi``.

    Each point's defect is divided by the largest magnitude among the three
    additive terms there, so nodes of ``psi`` do not inflate the measure.
    """
    z = residual_grid(p, grid_size) if grid is None else np.asarray(grid, dtype=float)
    mu = float(p.mu)
    if np.any(z <= 0) or np.any(z > p.s0) or np.any(p.s0 - p.q * z ** mu <= 0):
        raise DomainError("residual grid leaves the valid evaluation range")

    q, s0 = p.q, p.s0
    g2, b2, e2 = p.gamma_sq, p.beta_sq, state.eps_sq
    w = z ** mu
    sig_tilde = -(g2 + q * b2 + q * q * e2) * w * w + s0 * (b2 + 2 * q * e2) * w - s0 * s0 * e2
    sig_f = z * (s0 - q * w)

    d1 = differentiate(psi)
    d2 = differentiate(d1)
    t2 = d2(z)
    t1 = (2 - mu) / z * d1(z)
    t0 = sig_tilde / (sig_f * sig_f) * psi(z)
    scale = np.maximum(np.maximum(np.abs(t2), np.abs(t1)), np.abs(t0))
    total = np.abs(t2 + t1 + t0)
    if not np.all(np.isfinite(total)) or not np.all(np.isfinite(scale)):
        raise DomainError("non-finite values while evaluating the residual")
    degenerate = bool(np.all(scale == 0))
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, total / np.where(scale > 0, scale, 1.0), 0.0)
    return ResidualReport(
        grid=[float(v) for v in z],
        max_rel_residual=float(rel.max()),
        scale=float(scale.max()),
        tolerance=tolerance,
        degenerate=degenerate,
    )


def quantize_numeric(n: int, p: HulthenParams, xtol: float = 1e-13) -> float:
    """Energy of level ``n`` by bracketing the root of ``lambda - lambda_n`` in ``R``.

    The bracket is ``[-R_hi, R_hi]`` with ``R_hi = max(10, 4 beta^2 / Q)``;
    negative roots are kept so that levels the closed form tabulates with a
    negative radical are reproduced rather than lost.
    """
    prob = p.nu_problem()
    R_hi = max(10.0, 4 * prob.beta_sq / prob.radical_Q)

    def gap(R):
        return lambda_of_R(prob, R) - lambda_n_of_R(prob, R, n)

    lo, hi = -R_hi, R_hi
    glo, ghi = gap(lo), gap(hi)
    if glo * ghi > 0:
        raise NoBracket(f"no sign change of lambda - lambda_n on [{lo}, {hi}]", endpoints=(glo, ghi))
    R = brentq(gap, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps, maxiter=500)
    mu = float(p.mu)
    eps_sq = (R * R - (mu - 1) ** 2) / 4
    E2 = p.m ** 2 - p.alpha ** 2 * eps_sq
    if E2 < 0:
        raise ArithmeticError(f"numeric quantization gives E^2 = {E2!r} < 0")
    return math.sqrt(E2)


@dataclass(frozen=True)
class FDResult:
    energies: tuple
    x_range: tuple
    n_points: int
    refinement_shift: float
    pole_truncated: bool


def fd_domain(p: HulthenParams, x_max: float | None = None):
    """Interval ``(x0, x_max)`` for the finite-difference problem.

    For ``q > 0`` the left end sits just right of the pole at
    ``ln(q)/alpha``; the Rodrigues solutions live on exactly that half line.
    For ``q <= 0`` the potential is regular and the box is symmetric.
    """
    a = p.alpha
    if x_max is None:
        x_max = 40.0 / a
    if p.q > 0:
        x0 = math.log(p.q) / a + 1e-3 / a
        return x0, x_max, True
    return -x_max, x_max, False


def _fd_lowest(p: HulthenParams, x0: float, x1: float, N: int, count: int) -> np.ndarray:
    x = np.linspace(x0, x1, N + 2)[1:-1]
    h = x[1] - x[0]
    ex = np.exp(-p.alpha * x)
    S = -p.s0 * ex / (1 - p.q * ex)
    diag = 2.0 / (h * h) + S * S + 2 * p.m * S
    off = np.full(N - 1, -1.0 / (h * h))
    return eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1), eigvals_only=True)


def fd_eigensolve_mu1(
    p: HulthenParams,
    count: int = 1,
    x_max: float | None = None,
    N: int = 4000,
    refine_tol: float = 1e-4,
) -> FDResult:
    """Lowest ``count`` energies of ``-psi'' + (S^2 + 2 m S) psi = (E^2 - m^2) psi``.

    Central differences with Dirichlet ends. The same problem is also solved
    with ``2N`` points; a shift larger than ``refine_tol`` raises
    :class:`ConvergenceError`.
    """
    if p.mu != 1:
        raise DomainError("the finite-difference oracle covers mu = 1 only")
    if N < 2000:
        raise ValueError("need at least 2000 grid points")
    x0, x1, truncated = fd_domain(p, x_max)
    if math.exp(-p.alpha * x1) >= 1e-8:
        raise ValueError("x_max too small: exp(-alpha x_max) must be below 1e-8")
    coarse = _fd_lowest(p, x0, x1, N, count)
    fine = _fd_lowest(p, x0, x1, 2 * N, count)
    shift = float(np.max(np.abs(fine - coarse)))
    if shift > refine_tol:
        raise ConvergenceError(f"doubling N moved eigenvalues by {shift:.3g} > {refine_tol:.3g}")
    E2 = p.m ** 2 + coarse
    if np.any(E2 < 0):
        raise ArithmeticError("finite-difference level below -m^2")
    return FDResult(
        energies=tuple(sorted(float(v) for v in np.sqrt(E2))),
        x_range=(x0, x1),
        n_points=N,
        refinement_shift=shift,
        pole_truncated=truncated,
    )


def fd_eigenvalues(p: HulthenParams, N: int, count: int = 1, x_max: float | None = None) -> np.ndarray:
    """Raw ``E^2 - m^2`` eigenvalues at one resolution (for refinement studies)."""
    x0, x1, _ = fd_domain(p, x_max)
    return _fd_lowest(p, x0, x1, N, count)
