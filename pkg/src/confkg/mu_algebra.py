"""Exact term algebra for sums of ``c * z**p * (S0 - q*z**mu)**e``.

Exponents are kept exact so that equal monomials merge and the closed family
is stable under differentiation. Coefficients are plain floats because they
are built from irrational radicals.

Exponents may carry symbolic multiples of two irrational constants, ``R`` and
``K``, whose numeric values live in the shared :class:`TermContext`. An
exponent is ``const + r*R + s*K`` with ``const``, ``r`` and ``s`` rational.
Differentiation only ever shifts ``const`` by a rational amount, so the
symbolic parts are carried through untouched.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

import numpy as np

from .errors import DomainError, IrrationalExponent

#: Coefficients below this magnitude are dropped during normalization.
ZERO_CUTOFF = 1e-30

RationalLike = Union[int, Fraction, str]


def as_fraction(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Floats are refused: a binary float rarely carries the rational the caller
    meant, and exponent keys have to merge exactly.
    """
    if isinstance(value, bool):
        raise IrrationalExponent(f"not a rational number: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise IrrationalExponent(f"cannot parse {value!r} as a rational") from exc
    raise IrrationalExponent(
        f"exact rational required, got {type(value).__name__} {value!r}; "
        "pass an int, Fraction or a string such as '1/2'"
    )


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, order=True)
class Exponent:
    """Exponent ``const + r*R + s*K`` with exact rational parts."""

    const: Fraction = Fraction(0)
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "Exponent":
        if isinstance(value, Exponent):
            return value
        return cls(as_fraction(value))

    @property
    def is_rational(self) -> bool:
        return self.r == 0 and self.s == 0

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.const.denominator == 1

    def value(self, ctx: "TermContext") -> float:
        v = float(self.const)
        if self.r:
            v += float(self.r) * ctx.R
        if self.s:
            v += float(self.s) * ctx.K
        return v

    def __add__(self, other) -> "Exponent":
        other = Exponent.of(other)
        return Exponent(self.const + other.const, self.r + other.r, self.s + other.s)

    def __radd__(self, other) -> "Exponent":
        return self + other

    def __sub__(self, other) -> "Exponent":
        other = Exponent.of(other)
        return Exponent(self.const - other.const, self.r - other.r, self.s - other.s)

    def __neg__(self) -> "Exponent":
        return Exponent(-self.const, -self.r, -self.s)

    def to_json(self):
        if self.is_rational:
            return _frac_str(self.const)
        out = {"const": _frac_str(self.const)}
        if self.r:
            out["R"] = _frac_str(self.r)
        if self.s:
            out["K"] = _frac_str(self.s)
        return out

    @classmethod
    def from_json(cls, data) -> "Exponent":
        if isinstance(data, str):
            return cls(Fraction(data))
        return cls(
            Fraction(data["const"]),
            Fraction(data.get("R", "0")),
            Fraction(data.get("K", "0")),
        )

    def __str__(self):
        parts = [str(self.const)] if self.const or self.is_rational else []
        if self.r:
            parts.append(f"{self.r}*R")
        if self.s:
            parts.append(f"{self.s}*K")
        return "+".join(parts).replace("+-", "-")


@dataclass(frozen=True)
class TermContext:
    """Shared shape ``(mu, S0, q)`` plus numeric values of the symbols R, K."""

    mu: Fraction
    s0: float
    q: float
    R: float = 0.0
    K: float = 0.0

    def __post_init__(self):
        mu = as_fraction(self.mu)
        if not 0 < mu <= 1:
            raise DomainError(f"fractional order must lie in (0, 1], got {mu}")
        object.__setattr__(self, "mu", mu)
        for name in ("s0", "q", "R", "K"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)

    def base(self, z):
        """Evaluate ``S0 - q*z**mu``."""
        return self.s0 - self.q * np.power(z, float(self.mu))


@dataclass(frozen=True)
class MuTerm:
    coeff: float
    z_power: Exponent
    base_power: Exponent

    @property
    def key(self):
        return (self.z_power, self.base_power)


def _normalize(terms: Iterable[MuTerm]) -> tuple:
    merged: dict = {}
    for t in terms:
        if not math.isfinite(t.coeff):
            raise ValueError(f"non-finite coefficient {t.coeff!r}")
        merged[t.key] = merged.get(t.key, 0.0) + t.coeff
    return tuple(
        MuTerm(c, zp, bp)
        for (zp, bp), c in sorted(merged.items(), key=lambda kv: kv[0])
        if abs(c) >= ZERO_CUTOFF
    )


@dataclass(frozen=True)
class MuTermSum:
    """Normalized finite sum of :class:`MuTerm` sharing one context.

    Instances are immutable; arithmetic returns new sums. Two sums describing
    the same function compare equal because terms are merged and sorted on
    construction.
    """

    ctx: TermContext
    terms: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize(self.terms))

    # construction helpers

    @classmethod
    def zero(cls, ctx: TermContext) -> "MuTermSum":
        return cls(ctx, ())

    @classmethod
    def constant(cls, ctx: TermContext, c: float) -> "MuTermSum":
        return make_term(c, 0, 0, ctx)

    def normalize(self) -> "MuTermSum":
        return MuTermSum(self.ctx, self.terms)

    # algebra

    def _check_ctx(self, other: "MuTermSum"):
        if other.ctx != self.ctx:
            raise ValueError("cannot combine term sums with different contexts")

    def __add__(self, other):
        if isinstance(other, MuTermSum):
            self._check_ctx(other)
            return MuTermSum(self.ctx, self.terms + other.terms)
        return self + MuTermSum.constant(self.ctx, float(other))

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MuTermSum):
            self._check_ctx(other)
            return MuTermSum(
                self.ctx,
                tuple(
                    MuTerm(a.coeff * b.coeff, a.z_power + b.z_power, a.base_power + b.base_power)
                    for a in self.terms
                    for b in other.terms
                ),
            )
        c = float(other)
        return MuTermSum(self.ctx, tuple(MuTerm(t.coeff * c, t.z_power, t.base_power) for t in self.terms))

    __rmul__ = __mul__

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, z_power, base_power=0) -> float:
        """Coefficient of the monomial with the given exponents (0 if absent)."""
        key = (Exponent.of(z_power), Exponent.of(base_power))
        for t in self.terms:
            if t.key == key:
                return t.coeff
        return 0.0

    # calculus

    def differentiate(self) -> "MuTermSum":
        return differentiate(self)

    def nth_derivative(self, n: int) -> "MuTermSum":
        return nth_derivative(self, n)

    def __call__(self, z):
        return evaluate(self, z)

    # serialization

    def to_dict(self) -> dict:
        return {
            "context": {
                "mu": _frac_str(self.ctx.mu),
                "S0": self.ctx.s0,
                "q": self.ctx.q,
                "R": self.ctx.R,
                "K": self.ctx.K,
            },
            "terms": [
                {"coeff": t.coeff, "z_power": t.z_power.to_json(), "base_power": t.base_power.to_json()}
                for t in self.terms
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "MuTermSum":
        data = json.loads(text) if isinstance(text, str) else text
        c = data["context"]
        ctx = TermContext(Fraction(c["mu"]), c["S0"], c["q"], c.get("R", 0.0), c.get("K", 0.0))
        terms = tuple(
            MuTerm(float(t["coeff"]), Exponent.from_json(t["z_power"]), Exponent.from_json(t["base_power"]))
            for t in data["terms"]
        )
        return cls(ctx, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{t.coeff:.6g}*z^({t.z_power})*B^({t.base_power})" for t in self.terms)


def make_term(c: float, p, e, ctx) -> MuTermSum:
    """Single-term sum ``c * z**p * (S0 - q*z**mu)**e``.

    ``ctx`` is a :class:`TermContext` or a ``(mu, S0, q)`` tuple. ``p`` and
    ``e`` may be rationals or :class:`Exponent` values.
    """
    if not isinstance(ctx, TermContext):
        ctx = TermContext(*ctx)
    c = float(c)
    if not math.isfinite(c):
        raise ValueError(f"non-finite coefficient {c!r}")
    return MuTermSum(ctx, (MuTerm(c, Exponent.of(p), Exponent.of(e)),))


def differentiate(f: MuTermSum) -> MuTermSum:
    ctx = f.ctx
    mu = ctx.mu
    qmu = ctx.q * float(mu)
    out = []
    for t in f.terms:
        p = t.z_power.value(ctx)
        e = t.base_power.value(ctx)
        if p != 0.0:
            out.append(MuTerm(t.coeff * p, t.z_power - 1, t.base_power))
        if e != 0.0 and qmu != 0.0:
            out.append(MuTerm(-t.coeff * e * qmu, t.z_power + (mu - 1), t.base_power - 1))
    return MuTermSum(ctx, tuple(out))


def nth_derivative(f: MuTermSum, n: int) -> MuTermSum:
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    for _ in range(n):
        f = differentiate(f)
    return f


def evaluate(f: MuTermSum, z):
    """Evaluate the sum at ``z`` (scalar or array) with real powers."""
    ctx = f.ctx
    scalar = np.ndim(z) == 0
    z = np.asarray(z, dtype=float)
    if not f.terms:
        return 0.0 if scalar else np.zeros_like(z)

    needs_pos_z = any(not t.z_power.is_integer or t.z_power.const < 0 for t in f.terms)
    if needs_pos_z and np.any(z <= 0):
        raise DomainError("z must be positive for fractional or negative powers of z")
    if np.any(z < 0):
        # z**mu itself is complex for z < 0 and fractional mu
        if ctx.mu.denominator != 1:
            raise DomainError("z must be non-negative when mu is fractional")

    base = ctx.base(z)
    if any(not t.base_power.is_integer for t in f.terms) and np.any(base <= 0):
        raise DomainError("S0 - q*z**mu must be positive for non-integer base powers")

    total = np.zeros_like(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        for t in f.terms:
            total = total + t.coeff * np.power(z, t.z_power.value(ctx)) * np.power(
                base, t.base_power.value(ctx)
            )
    return float(total) if scalar else total
