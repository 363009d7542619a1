import math
from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp

from confkg.errors import DomainError, ImaginaryEnergy, NormalizationError, PoleError
from confkg.hulthen import (
    HulthenParams,
    PotentialKind,
    effective_quantities,
    energy,
    energy_via_nu,
    map_parameters,
    normalization_constant,
    potential,
    rodrigues_core,
    special_case,
    term_context,
    transform_x_to_z,
    transform_z_to_x,
    wavefunction,
)
from confkg.tables import cells


def t1(q=1.0, mu=F(1)):
    return HulthenParams.compton(0.25, 0.5, q, mu)


def test_potential_value():
    p = t1(q=0.5)
    assert potential(0.0, p) == pytest.approx(-0.25 / 0.5, rel=1e-15)
    x = 1.3
    ex = math.exp(-0.5 * x)
    assert potential(x, p) == pytest.approx(-0.25 * ex / (1 - 0.5 * ex), rel=1e-15)


def test_potential_pole():
    with pytest.raises(PoleError):
        potential(0.0, t1(q=1.0))
    with pytest.raises(PoleError):
        potential(math.log(1.5) / 0.5, t1(q=1.5))


def test_special_cases():
    assert special_case(0) is PotentialKind.EXPONENTIAL
    assert special_case(1) is PotentialKind.STANDARD_HULTHEN
    assert special_case(-1) is PotentialKind.WOODS_SAXON
    assert special_case(0.5) is PotentialKind.DEFORMED
    p = HulthenParams(m=1.0, s0=0.25, alpha=0.5, q=0.0)
    assert potential(2.0, p) == pytest.approx(-0.25 * math.exp(-1.0), rel=1e-15)


def test_effective_quantities():
    p = HulthenParams(m=1.0, s0=0.3, alpha=0.7, q=0.4)
    E, x = 0.9, 0.8
    S = potential(x, p)
    e_eff, u_eff = effective_quantities(E, x, p)
    assert e_eff == pytest.approx((E * E - 1) / 2)
    assert u_eff == pytest.approx(S * S / 2 + S)
    with pytest.raises(DomainError):
        effective_quantities(E, x, HulthenParams(m=0.0, s0=0.3, alpha=0.7, q=0.4))


def test_map_parameters():
    p = HulthenParams(m=2.0, s0=0.5, alpha=0.25, q=1.0)
    g2, b2, e2 = map_parameters(p, 1.5)
    assert (g2, b2, e2) == pytest.approx((4.0, 32.0, 28.0))


def test_transform_round_trip():
    p = t1()
    for x in (0.0, 0.3, 4.0, 30.0):
        assert transform_z_to_x(transform_x_to_z(x, p), p) == pytest.approx(x, abs=1e-12)
    with pytest.raises(DomainError):
        transform_z_to_x(0.3, p)
    with pytest.raises(DomainError):
        transform_z_to_x(0.0, p)


def test_invalid_params():
    with pytest.raises(DomainError):
        HulthenParams(m=1, s0=-0.1, alpha=1, q=1)
    with pytest.raises(DomainError):
        HulthenParams(m=1, s0=0.1, alpha=0, q=1)
    with pytest.raises(DomainError):
        HulthenParams(m=1, s0=0.1, alpha=1, q=1, mu=F(3, 2))


def test_q_zero_rejected():
    p = HulthenParams(m=1.0, s0=0.25, alpha=0.5, q=0.0)
    with pytest.raises(DomainError):
        energy(0, p)
    with pytest.raises(DomainError):
        p.nu_problem()


def test_published_cell_example():
    assert energy(0, t1(q=1.0, mu=F(1, 2))).energy == pytest.approx(0.481417, abs=5e-7)
    st = energy(0, t1(q=1.5, mu=F(1, 2)))
    assert st.energy == pytest.approx(0.5, abs=1e-15)
    assert st.radical_R == pytest.approx(0.5, rel=1e-14)
    assert st.radical_Q == pytest.approx(1.25, rel=1e-14)
    assert st.valid.ok


def test_tables_reproduce_to_printed_precision():
    bad = []
    for cell in cells():
        if abs(cell.computed - float(cell.printed)) > 5e-6:
            bad.append((cell.table, cell.q, str(cell.mu), cell.printed, round(cell.computed, 6)))
    # two printed cells drop a digit; everything else matches
    assert bad == [(1, 1.0, "1/2", "0.48417", 0.481417), (1, 1.5, "1/4", "0.45227", 0.452217)]


def test_negative_radical_level_is_flagged():
    st = energy(0, t1(q=1.0))
    assert st.radical_R < 0
    assert st.energy is not None
    assert not st.valid.ok
    assert st.valid.reason() == "negative_R"


def test_negative_branch():
    p = t1(q=0.5)
    assert energy(0, p, negative_branch=True).energy == -energy(0, p).energy


def test_imaginary_energy():
    # a large coupling and high level push E^2 below zero
    p = HulthenParams(m=0.1, s0=5.0, alpha=0.1, q=0.5, mu=F(1, 2))
    n = next(n for n in range(50) if energy(n, p).energy_sq < 0)
    st = energy(n, p)
    assert st.energy is None and st.valid.reason() == "imaginary_energy"
    with pytest.raises(ImaginaryEnergy):
        energy(n, p, strict=True)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_closed_form_equals_nu_route(n):
    for cell in cells():
        a, b = energy(n, cell.params), energy_via_nu(n, cell.params)
        assert a.energy_sq == pytest.approx(b.energy_sq, rel=1e-12)
        assert a.radical_R == pytest.approx(b.radical_R, rel=1e-10, abs=1e-12)


def test_ground_state_wavefunction_collapses():
    p = t1(q=0.5, mu=F(1, 2))
    st = energy(0, p)
    psi = wavefunction(0, p, st)
    assert len(psi.terms) == 1
    ctx = psi.ctx
    term = psi.terms[0]
    R, K = st.radical_R, ctx.K
    assert term.z_power.value(ctx) == pytest.approx(-0.25 + R / 2, rel=1e-14)
    assert term.base_power.value(ctx) == pytest.approx(0.5 + K / 2, rel=1e-14)


def test_rodrigues_mu_one_is_polynomial_times_weight():
    p = t1(q=0.5)
    st = energy(2, p)
    ctx = term_context(p, st)
    core = rodrigues_core(2, ctx)
    # every term is z^(R+a) B^(K+b) with a + b = n and a, b >= 0
    for t in core.terms:
        a = t.z_power.value(ctx) - st.radical_R
        b = t.base_power.value(ctx) - ctx.K
        assert round(a) + round(b) == 2
        assert min(round(a), round(b)) >= 0


def test_wavefunction_sympy_oracle():
    p = t1(q=1.5, mu=F(3, 4))
    n = 2
    st = energy(n, p)
    psi = wavefunction(n, p, st)
    z = sp.Symbol("z", positive=True)
    mu, R, K = sp.Rational(3, 4), sp.Float(st.radical_R, 30), sp.Float(psi.ctx.K, 30)
    B = sp.Rational(1, 4) - sp.Rational(3, 2) * z ** mu
    expr = z ** ((mu - 1) / 2 - R / 2) * B ** (sp.Rational(1, 2) - K / 2) * sp.diff(z ** (n + R) * B ** (n + K), z, n)
    f = sp.lambdify(z, expr, "mpmath")
    for zv in np.linspace(0.005, 0.9 * p.z_max, 7):
        want = float(f(zv))
        assert psi(zv) == pytest.approx(want, rel=1e-9)


def test_wavefunction_state_mismatch():
    p = t1(q=0.5)
    with pytest.raises(ValueError):
        wavefunction(1, p, energy(0, p))


def test_normalization():
    p = t1(q=0.5)
    st = energy(0, p)
    psi = wavefunction(0, p, st)
    B = normalization_constant(psi, p)
    normed = wavefunction(0, p, st, norm=B)
    # q < 1: z runs up to S0, i.e. x from 0 outward
    xs = np.linspace(0.0, 200.0, 400001)
    vals = normed(0.25 * np.exp(-0.5 * xs))
    assert np.trapezoid(vals ** 2, xs) == pytest.approx(1.0, rel=1e-3)


def test_normalization_rejects_non_integrable():
    p = t1(q=1.0)
    st = energy(0, p)  # R < 0: psi blows up toward z = 0
    psi = wavefunction(0, p, st)
    with pytest.raises(NormalizationError):
        normalization_constant(psi, p)
