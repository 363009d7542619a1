"""Conformable Nikiforov-Uvarov engine for the ``sigma_f = z (S0 - q w)`` family.

Throughout, ``w = z**mu``. The basic equation handled here is

    psi'' + tau~_f / sigma_f * psi' + sigma~ / sigma_f**2 * psi = 0

with ``tau~_f = c (S0 - q w)``, ``sigma_f = z (S0 - q w)`` and ``sigma~`` a
quadratic in ``w``. The auxiliary polynomial ``k`` is taken as
``k_mu * z**(mu - 1)`` so that ``k * sigma_f`` is again a quadratic in ``w``
and the whole construction stays inside that family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .conformable import FracOrder
from .errors import NegativeRadical, NegativeRadicand, NoPhysicalBranch
from .mu_algebra import MuTermSum, TermContext, as_fraction, make_term


@dataclass(frozen=True)
class NuProblem:
    """Coefficient data of the basic equation.

    The Hulthen reduction fixes ``sigma~ = A w**2 + B w + C`` with
    ``A = -(gamma^2 + q beta^2 + q^2 eps^2)``, ``B = S0 (beta^2 + 2 q eps^2)``
    and ``C = -S0^2 eps^2``; the physical inputs are stored and ``(A, B, C)``
    derived, since quantization needs the energy-free parts separately.
    """

    s0: float
    q: float
    mu: Fraction
    gamma_sq: float
    beta_sq: float
    eps_sq: float
    tau_scale: float = None

    def __post_init__(self):
        mu = FracOrder(self.mu).mu
        object.__setattr__(self, "mu", mu)
        if self.s0 == 0 or self.q == 0:
            raise ValueError("sigma_f = z (S0 - q w) needs S0 != 0 and q != 0")
        if self.tau_scale is None:
            object.__setattr__(self, "tau_scale", float(2 - mu))

    @property
    def m(self) -> float:
        return float(self.mu)

    @property
    def sigma_tilde(self):
        g2, b2, e2, q, s0 = self.gamma_sq, self.beta_sq, self.eps_sq, self.q, self.s0
        return (-(g2 + q * b2 + q * q * e2), s0 * (b2 + 2 * q * e2), -s0 * s0 * e2)

    @property
    def radical_Q(self) -> float:
        return math.sqrt(self.m ** 2 * self.q ** 2 + 4 * self.gamma_sq)

    def with_eps_sq(self, eps_sq: float) -> "NuProblem":
        return NuProblem(self.s0, self.q, self.mu, self.gamma_sq, self.beta_sq, eps_sq, self.tau_scale)

    def context(self, R: float = 0.0, K: float = 0.0) -> TermContext:
        return TermContext(self.mu, self.s0, self.q, R, K)


def _half_gap(p: NuProblem):
    """``(sigma_f' - tau~_f) / 2`` as ``(constant, w-coefficient)``."""
    c, m = p.tau_scale, p.m
    return p.s0 * (1 - c) / 2, -p.q * (m + 1 - c) / 2


def radicand_quadratic(p: NuProblem, k_mu: float):
    """Coefficients ``(a2, a1, a0)`` of the square-root argument in ``pi_f``.

    The argument is ``a2 w^2 + a1 w + a0``; it equals
    ``((sigma_f' - tau~_f)/2)^2 - sigma~ + k sigma_f``.
    """
    h0, h1 = _half_gap(p)
    A, B, C = p.sigma_tilde
    a2 = h1 * h1 - A - k_mu * p.q
    a1 = 2 * h0 * h1 - B + k_mu * p.s0
    a0 = h0 * h0 - C
    return a2, a1, a0


def discriminant(a2: float, a1: float, a0: float) -> float:
    return a1 * a1 - 4 * a2 * a0


def _k_quadratic(p: NuProblem):
    # discriminant(k) = (s0 k + u)^2 - 4 (v - q k) a0 = s0^2 k^2 + b k + c
    v, u, a0 = radicand_quadratic(p, 0.0)
    return p.s0 * p.s0, 2 * p.s0 * u + 4 * p.q * a0, u * u - 4 * v * a0, (u, v, a0)


def solve_k(p: NuProblem):
    """Both values of ``k_mu`` for which the radicand is a perfect square.

    Returns ``(k1, k2)`` with ``k2 <= k1``; ``k2`` is the branch carried
    forward by :func:`build_solution`. The discriminant of the quadratic in
    ``k`` factors as ``16 a0 F``; for the Hulthen family these are
    ``S0^2 ((mu-1)^2 + 4 eps^2) / 4`` and ``S0^2 (mu^2 q^2 + 4 gamma^2) / 4``.
    """
    qa, qb, qc, (u, v, a0) = _k_quadratic(p)
    second = p.q * p.s0 * u + p.q * p.q * a0 + p.s0 * p.s0 * v
    if a0 < 0 or second < 0:
        raise NegativeRadicand(
            f"radicand factors must be non-negative, got a0={a0!r}, F={second!r}",
            factors=(a0, second),
        )
    disc = 16 * a0 * second
    root = math.sqrt(disc)
    # stable quadratic roots
    if qb >= 0:
        t = -(qb + root) / 2
    else:
        t = -(qb - root) / 2
    r1 = t / qa
    r2 = qc / t if t != 0 else r1
    k1, k2 = max(r1, r2), min(r1, r2)
    return k1, k2


def solve_k_closed(p: NuProblem):
    """Closed form ``1/2 [2 beta^2 + mu(mu-1) q +- sqrt((mu^2 q^2 + 4 gamma^2)((mu-1)^2 + 4 eps^2))]``.

    Only valid for the Hulthen scale ``tau_scale = 2 - mu``.
    """
    m, q = p.m, p.q
    a = m * m * q * q + 4 * p.gamma_sq
    b = (m - 1) ** 2 + 4 * p.eps_sq
    if a * b < 0:
        raise NegativeRadicand(f"negative product under the root: {a!r} * {b!r}", factors=(a, b))
    s = math.sqrt(a * b)
    base = 2 * p.beta_sq + m * (m - 1) * q
    return (base + s) / 2, (base - s) / 2


@dataclass(frozen=True)
class Branch:
    k_mu: float
    pi_f: tuple
    tau_f: tuple
    tag: str

    @property
    def slope(self) -> float:
        return self.tau_f[1]


@dataclass(frozen=True)
class NuSolution:
    k_mu: float
    pi_f: tuple
    tau_f: tuple
    lambda_coeff: float
    branch_tag: str
    radical_R: float
    radical_Q: float
    alternatives: tuple = field(default=(), compare=False)

    def pi_sum(self, ctx: TermContext) -> MuTermSum:
        """``pi_f`` as a term sum in ``z``."""
        return make_term(self.pi_f[0], 0, 0, ctx) + make_term(self.pi_f[1], ctx.mu, 0, ctx)

    def tau_sum(self, ctx: TermContext) -> MuTermSum:
        return make_term(self.tau_f[0], 0, 0, ctx) + make_term(self.tau_f[1], ctx.mu, 0, ctx)


def _branches(p: NuProblem):
    h0, h1 = _half_gap(p)
    c = p.tau_scale
    k1, k2 = solve_k(p)
    out = []
    for kname, k in (("k-", k2), ("k+", k1)):
        a2, a1, a0 = radicand_quadratic(p, k)
        s0 = math.sqrt(max(a0, 0.0))
        s2 = math.sqrt(max(a2, 0.0))
        # sqrt(a2 w^2 + a1 w + a0) = +-(s0 + sign(a1) s2 w)
        lin = (s0, math.copysign(s2, a1) if a1 != 0 else s2)
        for sname, sign in (("+", 1.0), ("-", -1.0)):
            pi = (h0 + sign * lin[0], h1 + sign * lin[1])
            tau = (c * p.s0 + 2 * pi[0], -c * p.q + 2 * pi[1])
            out.append(Branch(k, pi, tau, f"{kname}/{sname}"))
    return out


def build_solution(p: NuProblem) -> NuSolution:
    """Pick the physical ``(k, pi_f)`` combination.

    Candidates are the two ``k`` roots times the two signs of the square
    root. Those whose ``tau_f`` falls in ``w`` qualify; among them the
    ``(k-, +)`` combination is preferred, then the rest in a fixed order.
    """
    branches = _branches(p)
    negative = [b for b in branches if b.slope < 0]
    if not negative:
        raise NoPhysicalBranch(
            "no sign combination gives tau_f a negative slope: "
            + ", ".join(f"{b.tag}:{b.slope:.3g}" for b in branches)
        )
    chosen = negative[0]
    m = p.m
    a0 = radicand_quadratic(p, chosen.k_mu)[2]
    R = 2 * math.sqrt(max(a0, 0.0)) / abs(p.s0)
    lam = chosen.k_mu + m * chosen.pi_f[1]
    return NuSolution(
        k_mu=chosen.k_mu,
        pi_f=chosen.pi_f,
        tau_f=chosen.tau_f,
        lambda_coeff=lam,
        branch_tag=chosen.tag,
        radical_R=R,
        radical_Q=p.radical_Q,
        alternatives=tuple(b for b in branches if b is not chosen),
    )


def lambda_n_coeff(p: NuProblem, sol: NuSolution, n: int) -> float:
    """Factor multiplying ``z**(mu-1)`` in ``-n tau_f' - n(n-1)/2 sigma_f''``."""
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    m = p.m
    tau_prime = sol.tau_f[1] * m
    sigma_second = -p.q * (m + 1) * m
    return -n * tau_prime - n * (n - 1) / 2 * sigma_second


def lambda_of_R(p: NuProblem, R: float) -> float:
    """``lambda`` coefficient of the selected branch written through ``R``."""
    m, q, Q = p.m, p.q, p.radical_Q
    return 0.5 * (2 * p.beta_sq - m * m * q - Q * R - m * Q - m * q * R)


def lambda_n_of_R(p: NuProblem, R: float, n: int) -> float:
    m, q, Q = p.m, p.q, p.radical_Q
    return n * m * (q * (m + 1 + R) + Q + (n - 1) * (m + 1) * q / 2)


def quantization_radical(p: NuProblem, n: int, strict: bool = True) -> float:
    """Root ``R`` of ``lambda(R) = lambda_n(R)``.

    Both sides are affine in ``R``. With ``strict`` a negative root raises
    :class:`NegativeRadical`; otherwise the signed root is returned and the
    caller is expected to flag it.
    """
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    m, q, Q = p.m, p.q, p.radical_Q
    denom = Q + m * q + 2 * n * m * q
    if denom <= 0:
        raise ArithmeticError(f"quantization denominator must be positive, got {denom!r}")
    num = 2 * p.beta_sq - m * m * q - m * Q - 2 * n * m * (q * (m + 1) + Q + (n - 1) * (m + 1) * q / 2)
    R = num / denom
    if strict and R < 0:
        raise NegativeRadical(f"quantization gives R = {R!r} < 0 for n = {n}", value=R)
    return R
