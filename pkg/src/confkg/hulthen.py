"""Generalized Hulthen scalar potential in the conformable Klein-Gordon equation.

Natural units (hbar = c = 1). The coordinate change ``z = S0 exp(-alpha x)``
maps the problem onto the conformable NU family of :mod:`confkg.nu_core`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from scipy import integrate

from .conformable import FracOrder
from .errors import DomainError, ImaginaryEnergy, NormalizationError, PoleError
from .mu_algebra import Exponent, MuTermSum, TermContext, make_term, nth_derivative
from .nu_core import NuProblem, quantization_radical


class PotentialKind(enum.Enum):
    EXPONENTIAL = "exponential"
    STANDARD_HULTHEN = "standard_hulthen"
    WOODS_SAXON = "woods_saxon"
    DEFORMED = "deformed"


def special_case(q: float) -> PotentialKind:
    if q == 0:
        return PotentialKind.EXPONENTIAL
    if q == 1:
        return PotentialKind.STANDARD_HULTHEN
    if q == -1:
        return PotentialKind.WOODS_SAXON
    return PotentialKind.DEFORMED


@dataclass(frozen=True)
class HulthenParams:
    m: float
    s0: float
    alpha: float
    q: float
    mu: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "mu", FracOrder(self.mu).mu)
        for name in ("m", "s0", "alpha", "q"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not self.s0 > 0:
            raise DomainError(f"S0 must be positive, got {self.s0}")
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    @classmethod
    def compton(cls, s0, alpha, q, mu=Fraction(1)) -> "HulthenParams":
        """Parameters in Compton units, where the mass equals ``alpha``."""
        return cls(m=alpha, s0=s0, alpha=alpha, q=q, mu=mu)

    @property
    def gamma_sq(self) -> float:
        return self.s0 ** 2 / self.alpha ** 2

    @property
    def beta_sq(self) -> float:
        return 2 * self.m * self.s0 / self.alpha ** 2

    @property
    def radical_Q(self) -> float:
        m = float(self.mu)
        return math.sqrt(m * m * self.q * self.q + 4 * self.gamma_sq)

    @property
    def z_max(self) -> float:
        """Upper end of the z-range on which ``S0 - q z**mu`` stays positive."""
        if self.q > 0:
            return min(self.s0, (self.s0 / self.q) ** (1 / float(self.mu)))
        return self.s0

    def nu_problem(self, eps_sq: float = 0.0) -> NuProblem:
        _require_deformed(self.q)
        return NuProblem(self.s0, self.q, self.mu, self.gamma_sq, self.beta_sq, eps_sq)


def _require_deformed(q: float):
    if q == 0:
        raise DomainError("q = 0 is singular in the closed forms (exponents carry 1/(mu q))")


def potential(x: float, p: HulthenParams) -> float:
    ex = math.exp(-p.alpha * x)
    den = 1 - p.q * ex
    if den == 0:
        raise PoleError(f"potential has a pole at x = ln(q)/alpha = {x!r}")
    return -p.s0 * ex / den


def effective_quantities(E: float, x: float, p: HulthenParams):
    """Schrodinger-like pair ``(E_eff, U_eff)``."""
    if not p.m > 0:
        raise DomainError("effective quantities need a positive rest mass")
    S = potential(x, p)
    return (E * E - p.m * p.m) / (2 * p.m), S * S / (2 * p.m) + S


def map_parameters(p: HulthenParams, E: float):
    a2 = p.alpha ** 2
    return p.s0 ** 2 / a2, 2 * p.m * p.s0 / a2, (p.m ** 2 - E * E) / a2


def transform_x_to_z(x: float, p: HulthenParams) -> float:
    return p.s0 * math.exp(-p.alpha * x)


def transform_z_to_x(z: float, p: HulthenParams) -> float:
    if not 0 < z <= p.s0:
        raise DomainError(f"z must lie in (0, S0] = (0, {p.s0}], got {z!r}")
    return -math.log(z / p.s0) / p.alpha


@dataclass(frozen=True)
class Validity:
    real_energy: bool
    nonneg_R: bool
    bound: bool

    @property
    def ok(self) -> bool:
        return self.real_energy and self.nonneg_R

    def reason(self) -> str:
        if not self.real_energy:
            return "imaginary_energy"
        if not self.nonneg_R:
            return "negative_R"
        return "ok"


@dataclass(frozen=True)
class Eigenstate:
    """One level of the spectrum.

    ``radical_R`` holds the signed root of the quantization condition; a
    negative value means the level reproduces the closed-form energy but the
    factor ``z**R`` is not the decaying branch, and ``valid.nonneg_R`` is
    cleared. ``energy`` is ``None`` when ``energy_sq < 0``.
    """

    n: int
    energy: float | None
    energy_sq: float
    eps_sq: float
    radical_R: float
    radical_Q: float
    valid: Validity
    params: HulthenParams = field(compare=False, repr=False, default=None)

    def perturbed(self, factor: float) -> "Eigenstate":
        """Same level with the energy scaled by ``factor`` (for sensitivity checks)."""
        if self.energy is None:
            raise ImaginaryEnergy("cannot perturb a level without a real energy", self.energy_sq)
        p = self.params
        E = self.energy * factor
        eps_sq = (p.m ** 2 - E * E) / p.alpha ** 2
        return replace(self, energy=E, energy_sq=E * E, eps_sq=eps_sq,
                       valid=replace(self.valid, bound=eps_sq > 0))


def energy_sq_closed_form(n: int, p: HulthenParams) -> float:
    """``E^2`` from the closed-form spectrum."""
    _require_deformed(p.q)
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    mu, q, a, s0, m = float(p.mu), p.q, p.alpha, p.s0, p.m
    root = math.sqrt(mu * mu * a * a * q * q + 4 * s0 * s0)
    num = 4 * m * s0 - mu * mu * a * a * q - mu * a * root * (1 + 2 * n) - mu * (mu + 1) * n * (n + 1) * q * a * a
    den = mu * a * a * q * (2 * n + 1) + a * root
    if den == 0:
        raise ArithmeticError("spectrum denominator vanishes")
    ratio = num / den
    return m * m + a * a / 4 * ((mu - 1) ** 2 - ratio * ratio), ratio


def energy(n: int, p: HulthenParams, negative_branch: bool = False, strict: bool = False) -> Eigenstate:
    """Energy level ``n`` from the closed form.

    With ``strict`` an imaginary energy raises :class:`ImaginaryEnergy`;
    otherwise the level comes back with ``energy=None`` and flags cleared.
    """
    E2, ratio = energy_sq_closed_form(n, p)
    R = ratio
    eps_sq = (p.m ** 2 - E2) / p.alpha ** 2
    real = E2 >= 0
    if strict and not real:
        raise ImaginaryEnergy(f"E^2 = {E2!r} < 0 for n = {n}", E2)
    E = math.sqrt(E2) if real else None
    if E is not None and negative_branch:
        E = -E
    return Eigenstate(
        n=n,
        energy=E,
        energy_sq=E2,
        eps_sq=eps_sq,
        radical_R=R,
        radical_Q=p.radical_Q,
        valid=Validity(real_energy=real, nonneg_R=R >= 0, bound=eps_sq > 0),
        params=p,
    )


def energy_via_nu(n: int, p: HulthenParams) -> Eigenstate:
    """Same level through the NU quantization condition (``R -> eps^2 -> E``)."""
    R = quantization_radical(p.nu_problem(), n, strict=False)
    mu = float(p.mu)
    eps_sq = (R * R - (mu - 1) ** 2) / 4
    E2 = p.m ** 2 - p.alpha ** 2 * eps_sq
    real = E2 >= 0
    return Eigenstate(
        n=n,
        energy=math.sqrt(E2) if real else None,
        energy_sq=E2,
        eps_sq=eps_sq,
        radical_R=R,
        radical_Q=p.radical_Q,
        valid=Validity(real_energy=real, nonneg_R=R >= 0, bound=eps_sq > 0),
        params=p,
    )


def term_context(p: HulthenParams, state: Eigenstate) -> TermContext:
    """Context whose symbols are ``R`` and ``K = Q / (mu q)``."""
    _require_deformed(p.q)
    K = state.radical_Q / (float(p.mu) * p.q)
    return TermContext(p.mu, p.s0, p.q, state.radical_R, K)


R_SYM = Exponent(r=Fraction(1))
K_SYM = Exponent(s=Fraction(1))


def rodrigues_core(n: int, ctx: TermContext) -> MuTermSum:
    """``d^n/dz^n [z**(n+R) (S0 - q z**mu)**(n+K)]``."""
    return nth_derivative(make_term(1.0, R_SYM + n, K_SYM + n, ctx), n)


def wavefunction(n: int, p: HulthenParams, state: Eigenstate, norm: float = 1.0) -> MuTermSum:
    """``psi = phi * y_n`` with ``y_n`` from the Rodrigues formula.

    The prefactor ``phi / rho`` collapses to
    ``z**((mu-1)/2 - R/2) * (S0 - q z**mu)**(1/2 - K/2)``.
    """
    if state.n != n:
        raise ValueError(f"state belongs to n={state.n}, not n={n}")
    ctx = term_context(p, state)
    half = Fraction(1, 2)
    pre = make_term(norm, Exponent((p.mu - 1) / 2, -half), Exponent(half, Fraction(0), -half), ctx)
    return pre * rodrigues_core(n, ctx)


def normalization_constant(psi: MuTermSum, p: HulthenParams) -> float:
    """``B_n`` making ``int |psi(x)|^2 dx = 1`` over the evaluation range.

    With ``dx = -dz / (alpha z)`` the integral runs over ``z in (0, z_max)``.
    """
    ctx = psi.ctx
    if not psi:
        raise NormalizationError("the zero function cannot be normalized")
    lowest = min(t.z_power.value(ctx) for t in psi.terms)
    if lowest <= 0:
        raise NormalizationError(
            f"psi ~ z**{lowest:.6g} near z = 0 is not square integrable in x"
        )
    zmax = p.z_max

    def integrand(z):
        v = psi(z)
        return v * v / (p.alpha * z)

    val, err = integrate.quad(integrand, 0.0, zmax, epsabs=0.0, epsrel=1e-10, limit=200)
    if not math.isfinite(val) or val <= 0 or err > 1e-8 * val:
        raise NormalizationError(f"quadrature did not converge: {val!r} +- {err!r}")
    return 1.0 / math.sqrt(val)
