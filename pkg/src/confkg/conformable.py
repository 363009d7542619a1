"""Conformable (local) fractional derivative of order ``0 < mu <= 1``.

For differentiable ``f`` the operator reduces to ``t**(1 - mu) * f'(t)``; the
limit form is kept as an independent numeric route so that the reduction and
the usual calculus rules can be checked against it.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import DomainError, NonConvergence
from .mu_algebra import as_fraction

#: Spatial steps used by the limit estimate, largest first.
STEP_SCHEDULE = (1e-3, 1e-4, 1e-5)
#: Successive Richardson extrapolants must agree to this relative tolerance.
RICHARDSON_RTOL = 1e-6
#: Stand-in for the right limit at ``t = 0``.
T_ORIGIN = 1e-8


@dataclass(frozen=True)
class FracOrder:
    mu: Fraction

    def __post_init__(self):
        mu = as_fraction(self.mu)
        if not 0 < mu <= 1:
            raise DomainError(f"fractional order must lie in (0, 1], got {mu}")
        object.__setattr__(self, "mu", mu)

    def __float__(self):
        return float(self.mu)

    def __str__(self):
        return str(self.mu)


def _order(mu) -> FracOrder:
    return mu if isinstance(mu, FracOrder) else FracOrder(mu)


@dataclass(frozen=True)
class LimitEstimate:
    """``value`` with ``error`` (spread of the extrapolants) and ``rounding``.

    ``rounding`` bounds how much floating-point noise in ``f`` can move
    ``value``; pass it as ``noise`` when the estimate is itself differentiated.
    """

    value: float
    error: float
    rounding: float = 0.0

    def __float__(self):
        return self.value


def _limit_at(f, t: float, mu: float, rtol: float, noise: float | None) -> LimitEstimate:
    scale = t ** (1.0 - mu)
    f0 = f(t)
    quotients, eps_used = [], []
    for h in STEP_SCHEDULE:
        # displacement t**(1-mu) * eps equal to h; eps is taken from the step
        # that is actually representable, which keeps the quotient free of
        # the rounding in t + h
        shifted = t + h
        eps = (shifted - t) / scale
        eps_used.append(eps)
        quotients.append((f(shifted) - f0) / eps)
    # rounding of f itself plus the rounding of its argument, t * f' * u
    u = sys.float_info.epsilon
    noise = (noise or 0.0) + u * (abs(f0) + t * abs(quotients[0]) / scale)
    ratio = STEP_SCHEDULE[0] / STEP_SCHEDULE[1]
    extrap = [
        (ratio * fine - coarse) / (ratio - 1.0)
        for coarse, fine in zip(quotients, quotients[1:])
    ]
    # the coarser pair carries smooth truncation error only; the finest pair
    # is dominated by rounding and serves as the consistency check
    value = extrap[0]
    err = abs(extrap[1] - extrap[0])
    # each quotient may be off by 2 * noise / eps; the extrapolants inherit
    # that with weight ratio / (ratio - 1)
    gain = ratio / (ratio - 1.0)
    rounding = gain * 2 * noise / eps_used[1] + 2 * noise / eps_used[0] / (ratio - 1.0)
    floor = 2 * gain * 2 * noise / eps_used[2]
    if err > max(rtol * abs(value), floor, 1e-12):
        raise NonConvergence(
            f"Richardson extrapolants disagree at t={t}: {extrap[0]!r} vs {extrap[1]!r}"
        )
    return LimitEstimate(value, err, rounding)


def conf_deriv_limit(
    f: Callable[[float], float],
    t: float,
    mu,
    rtol: float = RICHARDSON_RTOL,
    noise: float | None = None,
) -> LimitEstimate:
    """Estimate ``lim_{eps->0} (f(t + eps*t**(1-mu)) - f(t)) / eps``.

    At ``t == 0`` the right limit is approximated by evaluating at
    :data:`T_ORIGIN` and ten times that, and the two must agree.

    ``rtol`` bounds the allowed disagreement between successive extrapolants.
    ``noise`` is the absolute accuracy of the values of ``f`` beyond plain
    machine rounding, which is always accounted for. Disagreement the finest quotient cannot resolve at
    that accuracy is not reported as non-convergence. When ``f`` is itself a
    limit estimate, pass its ``rounding``.
    """
    m = float(_order(mu))
    if t < 0:
        raise DomainError("the conformable derivative is defined for t >= 0")
    if t == 0:
        near = _limit_at(f, T_ORIGIN, m, rtol, noise)
        further = _limit_at(f, 10 * T_ORIGIN, m, rtol, noise)
        if abs(near.value - further.value) > 1e-6 * max(1.0, abs(near.value)):
            raise NonConvergence(
                f"right limit at 0 not settled: {further.value!r} -> {near.value!r}"
            )
        return LimitEstimate(near.value, max(near.error, abs(near.value - further.value)), near.rounding)
    return _limit_at(f, t, m, rtol, noise)


def conf_deriv_key(fprime: Callable[[float], float], t: float, mu) -> float:
    """``t**(1 - mu) * f'(t)``."""
    m = _order(mu).mu
    if t <= 0:
        raise DomainError("the key-property form needs t > 0")
    if m == 1:
        return fprime(t)
    return t ** float(1 - m) * fprime(t)


def conf_deriv2_coefficients(mu):
    """Coefficients of the double application ``D^mu D^mu``.

    Returns ``((1, 2 - 2mu), (1 - mu, 1 - 2mu))``, i.e. the classical form
    ``z**(2-2mu) * psi'' + (1-mu) * z**(1-2mu) * psi'`` as
    ``(coefficient, power)`` pairs with exact rationals.
    """
    m = _order(mu).mu
    return (Fraction(1), 2 - 2 * m), (1 - m, 1 - 2 * m)


def apply_deriv2(psi_prime, psi_second, t: float, mu) -> float:
    """Evaluate ``D^mu D^mu psi`` from classical derivatives at ``t``."""
    (a_c, a_p), (b_c, b_p) = conf_deriv2_coefficients(mu)
    return float(a_c) * t ** float(a_p) * psi_second(t) + float(b_c) * t ** float(b_p) * psi_prime(t)
