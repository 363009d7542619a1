import math
from fractions import Fraction as F

import numpy as np
import pytest

from confkg.errors import DomainError, NoBracket
from confkg.hulthen import HulthenParams, energy, wavefunction
from confkg.mu_algebra import MuTermSum
from confkg.verify import (
    fd_domain,
    fd_eigensolve_mu1,
    fd_eigenvalues,
    ode_residual,
    quantize_numeric,
    residual_grid,
)


def t1(q, mu=F(1)):
    return HulthenParams.compton(0.25, 0.5, q, mu)


@pytest.mark.parametrize("mu", [F(1, 4), F(1, 2), F(3, 4), F(1)])
def test_ground_state_residual_is_tiny(mu):
    p = t1(0.5, mu)
    st = energy(0, p)
    rep = ode_residual(wavefunction(0, p, st), st, p)
    assert rep.passed and not rep.degenerate
    assert rep.max_rel_residual < 1e-10


@pytest.mark.parametrize("n", [1, 2])
def test_excited_residual_at_mu_one(n):
    p = t1(0.5)
    st = energy(n, p)
    assert ode_residual(wavefunction(n, p, st), st, p).max_rel_residual < 1e-9


def test_perturbed_energy_is_detected():
    p = t1(0.5, F(1, 2))
    st = energy(0, p)
    psi = wavefunction(0, p, st)
    rep = ode_residual(psi, st.perturbed(1.01), p)
    assert rep.max_rel_residual > 1e-3
    assert not rep.passed


def test_zero_function_is_degenerate():
    p = t1(0.5)
    st = energy(0, p)
    zero = MuTermSum(wavefunction(0, p, st).ctx, ())
    rep = ode_residual(zero, st, p)
    assert rep.degenerate and rep.max_rel_residual == 0.0


def test_residual_grid_stays_inside_domain():
    for q in (0.5, 1.0, 1.5):
        p = t1(q, F(1, 2))
        z = residual_grid(p)
        assert z.min() > 0 and z.max() < p.z_max
        assert np.all(0.25 - q * z ** 0.5 > 0)
    p = t1(1.5, F(1, 2))
    st = energy(0, p)
    with pytest.raises(DomainError):
        ode_residual(wavefunction(0, p, st), st, p, grid=[0.2])


def test_report_dict():
    p = t1(0.5)
    st = energy(0, p)
    d = ode_residual(wavefunction(0, p, st), st, p).to_dict()
    assert "grid" not in d and d["passed"] is True


@pytest.mark.parametrize("q", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("mu", [F(1, 4), F(1, 2), F(1)])
def test_quantize_numeric_matches_closed_form(q, mu):
    p = t1(q, mu)
    for n in (0, 1):
        closed = energy(n, p).energy
        assert quantize_numeric(n, p) == pytest.approx(closed, rel=1e-10)


def test_quantize_no_bracket():
    with pytest.raises(NoBracket) as info:
        quantize_numeric(20, t1(0.5))
    assert len(info.value.endpoints) == 2


def test_fd_matches_decaying_level():
    p = t1(0.5)
    res = fd_eigensolve_mu1(p)
    assert res.pole_truncated
    assert res.energies[0] == pytest.approx(energy(0, p).energy, abs=5e-4)
    assert res.energies[0] == pytest.approx(0.496505, abs=1e-6)


def test_fd_free_particle_limit():
    p = HulthenParams(m=1.0, s0=1e-6, alpha=1.0, q=-0.5)
    res = fd_eigensolve_mu1(p)
    assert not res.pole_truncated
    assert res.x_range == (-40.0, 40.0)
    # lowest Dirichlet mode of a box of length 80
    assert res.energies[0] == pytest.approx(math.sqrt(1 + (math.pi / 80) ** 2), abs=1e-5)


def test_fd_second_order_convergence():
    p = t1(0.5)
    e = [fd_eigenvalues(p, N)[0] for N in (2000, 4000, 8000)]
    order = math.log2(abs(e[1] - e[0]) / abs(e[2] - e[1]))
    assert 1.7 < order < 2.3


def test_fd_domain():
    x0, x1, cut = fd_domain(t1(1.5))
    assert cut and x0 == pytest.approx(math.log(1.5) / 0.5 + 2e-3) and x1 == 80.0


def test_fd_rejects_fractional_and_coarse():
    with pytest.raises(DomainError):
        fd_eigensolve_mu1(t1(0.5, F(1, 2)))
    with pytest.raises(ValueError):
        fd_eigensolve_mu1(t1(0.5), N=500)
    with pytest.raises(ValueError):
        fd_eigensolve_mu1(t1(0.5), x_max=5.0)
