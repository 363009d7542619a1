"""Verification matrices and JSON reports built on :mod:`confkg.verify`."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfKGError
from .hulthen import HulthenParams, energy, wavefunction
from .tables import cells
from .verify import RESIDUAL_TOL, fd_eigensolve_mu1, ode_residual, quantize_numeric

SUITES = ("residual", "quantization", "fd")
QUANTIZATION_RTOL = 1e-10
FD_ATOL = 5e-4
#: Relative residual that a corrupted energy must exceed.
SENSITIVITY_FLOOR = 1e-3


@dataclass(frozen=True)
class Case:
    params: HulthenParams
    n: int = 0
    energy_factor: float = 1.0

    def __post_init__(self):
        if not self.energy_factor > 0:
            raise ValueError("energy_factor must be positive")

    def describe(self) -> dict:
        p = self.params
        return {
            "mu": f"{p.mu.numerator}/{p.mu.denominator}",
            "q": p.q,
            "alpha": p.alpha,
            "S0": p.s0,
            "m": p.m,
            "n": self.n,
            "energy_factor": self.energy_factor,
        }


def builtin_matrix(ns=(0, 1, 2)):
    """Every published table cell for each ``n`` whose level is valid."""
    out = []
    for cell in cells():
        p = cell.params
        for n in ns:
            if energy(n, p).valid.ok:
                out.append(Case(p, n))
    return out


def load_matrix(path: str):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, list) or not data:
        raise ValueError(f"matrix file {path!r} holds no cases")
    out = []
    for rec in data:
        alpha = float(rec["alpha"])
        m = float(rec["m"]) if "m" in rec else alpha
        p = HulthenParams(m=m, s0=float(rec.get("S0", 0.25)), alpha=alpha, q=float(rec["q"]),
                          mu=Fraction(str(rec["mu"])))
        n = int(rec.get("n", 0))
        factor = float(rec.get("energy_factor", 1.0))
        if "energy" in rec:
            # an explicit energy is checked as given, relative to the closed form
            factor = float(rec["energy"]) / energy(n, p).energy
        out.append(Case(p, n, factor))
    return out


def _residual_case(case: Case) -> dict:
    p = case.params
    st = energy(case.n, p, strict=True)
    psi = wavefunction(case.n, p, st)
    used = st.perturbed(case.energy_factor) if case.energy_factor != 1.0 else st
    rep = ode_residual(psi, used, p)
    return {"energy": used.energy, "closed_form": st.energy,
            "max_rel_residual": rep.max_rel_residual, "scale": rep.scale,
            "tolerance": RESIDUAL_TOL, "degenerate": rep.degenerate,
            "passed": rep.passed and not rep.degenerate}


def sensitivity(case: Case, factor: float = 1.01) -> float:
    """Residual of the level's own ``psi`` when its energy is scaled by ``factor``."""
    p = case.params
    st = energy(case.n, p, strict=True)
    return ode_residual(wavefunction(case.n, p, st), st.perturbed(factor), p).max_rel_residual


def _quantization_case(case: Case) -> dict:
    p = case.params
    closed = energy(case.n, p).energy
    numeric = quantize_numeric(case.n, p)
    delta = abs(numeric - closed) / abs(closed)
    return {"closed_form": closed, "numeric": numeric, "rel_delta": delta,
            "tolerance": QUANTIZATION_RTOL, "passed": delta <= QUANTIZATION_RTOL}


def _fd_case(case: Case) -> dict | None:
    p = case.params
    if p.mu != 1:
        return None
    closed = energy(case.n, p).energy
    fd = fd_eigensolve_mu1(p, count=case.n + 1)
    value = fd.energies[case.n]
    delta = abs(value - closed)
    return {"closed_form": closed, "fd": value, "abs_delta": delta, "tolerance": FD_ATOL,
            "pole_truncated": fd.pole_truncated, "passed": delta <= FD_ATOL}


_RUNNERS = {"residual": _residual_case, "quantization": _quantization_case, "fd": _fd_case}


def run_suite(suite: str, matrix) -> dict:
    """Run one suite (or ``"all"``) and return a JSON-ready report."""
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in _RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
    results = []
    for case in matrix:
        for name in names:
            try:
                out = _RUNNERS[name](case)
            except (ConfKGError, ArithmeticError) as exc:
                out = {"error": f"{type(exc).__name__}: {exc}", "passed": False}
            if out is None:
                continue
            results.append({"suite": name, "case": case.describe(), **out})
    failed = sum(not r["passed"] for r in results)
    return {"suite": suite, "n_checks": len(results), "n_failed": failed,
            "passed": failed == 0 and bool(results), "results": results}
