from __future__ import annotations

import mpmath
import numpy as np
import pytest

from wengzeta.special import PoleError, bernoulli_even, gamma, loggamma, xi, xi_completed, zeta


def mp_xi(s: complex) -> complex:
    s = mpmath.mpc(s)
    return complex(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))


def test_constants():
    assert abs(xi_completed(2) - np.pi / 6) < 1e-12
    assert abs(complex(zeta(2)[0]) - np.pi**2 / 6) < 1e-12
    assert abs(complex(zeta(4)[0]) - np.pi**4 / 90) < 1e-12
    assert abs(complex(zeta(0.5)[0]) - float(mpmath.zeta(0.5))) < 1e-12


def test_bernoulli():
    B = bernoulli_even(4)
    assert B == (1 / 6, -1 / 30, 1 / 42, -1 / 30)


def test_zeta_against_mpmath():
    rng = np.random.default_rng(11)
    s = rng.uniform(-20, 20, 200) + 1j * rng.uniform(-40, 40, 200)
    ours = zeta(s)
    ref = np.array([complex(mpmath.zeta(mpmath.mpc(z))) for z in s])
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-10


def test_xi_against_mpmath():
    rng = np.random.default_rng(12)
    s = rng.uniform(-30, 30, 200) + 1j * rng.uniform(-40, 40, 200)
    ours = xi(s)
    ref = np.array([mp_xi(z) for z in s])
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-11


def test_gamma_against_mpmath():
    rng = np.random.default_rng(13)
    z = rng.uniform(-15, 15, 200) + 1j * rng.uniform(-20, 20, 200)
    ours = gamma(z)
    ref = np.array([complex(mpmath.gamma(mpmath.mpc(v))) for v in z])
    assert np.max(np.abs(ours - ref) / np.abs(ref)) < 1e-12
    # log-gamma agrees up to 2 pi i
    d = loggamma(z) - np.array([complex(mpmath.loggamma(mpmath.mpc(v))) for v in z])
    assert np.max(np.abs(np.exp(1j * d.imag) - 1)) < 1e-10
    assert np.max(np.abs(d.real)) < 1e-10


def test_xi_functional_equation():
    rng = np.random.default_rng(14)
    s = rng.uniform(-20, 20, 100) + 1j * rng.uniform(-30, 30, 100)
    a, b = xi(s), xi(1 - s)
    assert np.max(np.abs(a - b) / np.abs(a)) < 1e-10


def test_real_on_critical_line():
    v = xi(0.5 + 1j * np.linspace(1, 40, 50))
    assert np.max(np.abs(v.imag) / np.abs(v)) < 1e-10


@pytest.mark.parametrize("where,res", [(0.0, -1.0), (1.0, 1.0)])
def test_poles(where, res):
    with pytest.raises(PoleError) as info:
        xi(where + 1e-10)
    assert info.value.where == where and info.value.residue == res
    # residue check just outside the exclusion radius
    eps = 1e-6
    assert abs(complex(xi(where + eps)[0]) * eps - res) < 1e-5
