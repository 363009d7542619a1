"""Ground-state sweeps over (alpha, q, mu) grids."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .conformable import FracOrder
from .errors import ConfKGError
from .hulthen import HulthenParams, energy

COLUMNS = ("alpha", "q", "mu", "n", "m", "energy", "eps_sq", "R", "Q", "reason")


@dataclass(frozen=True)
class SweepSpec:
    mu_grid: tuple
    q_values: tuple
    alpha_values: tuple
    s0: float = 0.25
    n: int = 0
    compton_units: bool = True
    m: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "mu_grid", tuple(FracOrder(mu).mu for mu in self.mu_grid))
        object.__setattr__(self, "q_values", tuple(float(v) for v in self.q_values))
        object.__setattr__(self, "alpha_values", tuple(float(v) for v in self.alpha_values))
        if not (self.mu_grid and self.q_values and self.alpha_values):
            raise ValueError("sweep grids must be non-empty")
        if self.compton_units == (self.m is not None):
            raise ValueError("give exactly one of compton units or an explicit mass")

    @staticmethod
    def uniform_mu(steps: int):
        """``k / steps`` for ``k = 1..steps``."""
        if steps < 1:
            raise ValueError("need at least one mu step")
        return tuple(Fraction(k, steps) for k in range(1, steps + 1))


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    q: float
    mu: Fraction
    n: int
    m: float
    energy: float | None
    eps_sq: float | None
    R: float | None
    Q: float | None
    reason: str


def run_sweep(spec: SweepSpec):
    rows = []
    for alpha in spec.alpha_values:
        for q in spec.q_values:
            for mu in spec.mu_grid:
                m = alpha if spec.compton_units else spec.m
                p = HulthenParams(m=m, s0=spec.s0, alpha=alpha, q=q, mu=mu)
                try:
                    st = energy(spec.n, p)
                except (ConfKGError, ArithmeticError) as exc:
                    rows.append(SweepRow(alpha, q, mu, spec.n, m, None, None, None, None,
                                         type(exc).__name__))
                    continue
                if st.energy is None:
                    rows.append(SweepRow(alpha, q, mu, spec.n, m, None, None, st.radical_R,
                                         st.radical_Q, st.valid.reason()))
                else:
                    rows.append(SweepRow(alpha, q, mu, spec.n, m, st.energy, st.eps_sq,
                                         st.radical_R, st.radical_Q, st.valid.reason()))
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def read_sweep_csv(text: str):
    """Parse sweep CSV back into dicts; empty energy cells become ``None``."""
    out = []
    for rec in csv.DictReader(io.StringIO(text)):
        out.append({
            "alpha": float(rec["alpha"]),
            "q": float(rec["q"]),
            "mu": Fraction(rec["mu"]),
            "energy": float(rec["energy"]) if rec["energy"] else None,
            "reason": rec["reason"],
        })
    return out


def validity_onset(records, alpha: float, q: float):
    """Smallest mu from which every later point has an energy.

    Returns ``(mu_min, prefix_ok)``; ``prefix_ok`` is false when a null
    energy appears above a valid one.
    """
    curve = sorted((r for r in records if r["alpha"] == alpha and r["q"] == q), key=lambda r: r["mu"])
    valid = [r["energy"] is not None for r in curve]
    if not any(valid):
        return None, True
    first = valid.index(True)
    return curve[first]["mu"], all(valid[first:])


def argmax_mu(records, alpha: float, q: float) -> Fraction:
    curve = [r for r in records if r["alpha"] == alpha and r["q"] == q and r["energy"] is not None]
    return max(curve, key=lambda r: (r["energy"], -r["mu"]))["mu"]
