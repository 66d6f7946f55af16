import math

import mpmath as mp
import numpy as np
import pytest

from modmass import numerics as nm
from modmass.errors import DomainError, PoleError


PREC = nm.Precision()


def rel(a, b):
    return abs(a - b) / abs(b)


def test_precision_default_and_env(monkeypatch):
    assert nm.Precision().mantissa_bits == 192
    assert nm.Precision().target_rel_error == 2.0**-144
    monkeypatch.setenv(nm.ENV_PRECISION, "128")
    assert nm.Precision.default().mantissa_bits == 128
    monkeypatch.setenv(nm.ENV_PRECISION, "lots")
    with pytest.raises(DomainError):
        nm.Precision.default()
    with pytest.raises(DomainError):
        nm.Precision(32)


def test_gamma_classical_values():
    assert nm.gamma(1) == 1
    with PREC.workprec():
        assert mp.almosteq(nm.gamma(mp.mpf(1) / 2), mp.sqrt(mp.pi), rel_eps=PREC.target_rel_error)
    assert nm.gamma(13) == 479001600


@pytest.mark.parametrize("s", [0, -1, -7])
def test_gamma_poles(s):
    with pytest.raises(PoleError):
        nm.gamma(s)
    assert nm.rgamma(s) == 0


def test_gamma_recurrence_random():
    rng = np.random.default_rng(1)
    tol = 10 * PREC.target_rel_error
    with PREC.workprec():
        for _ in range(100):
            r, th = 50 * rng.random(), 2 * math.pi * rng.random()
            s = mp.mpc(r * math.cos(th), r * math.sin(th))
            if abs(s - mp.nint(mp.re(s))) < 1e-6 and mp.re(s) <= 0.5:
                continue
            assert rel(nm.gamma(s + 1), s * nm.gamma(s)) <= tol


def test_gamma_reflection():
    rng = np.random.default_rng(2)
    with PREC.workprec():
        for _ in range(30):
            s = mp.mpc(rng.uniform(-10, 10), rng.uniform(-3, 3))
            v = nm.gamma(s) * nm.gamma(1 - s) * mp.sin(mp.pi * s) / mp.pi
            assert abs(v - 1) <= 1e3 * PREC.target_rel_error


def test_gamma_r():
    with PREC.workprec():
        assert mp.almosteq(nm.gamma_r(2), 1 / mp.pi, rel_eps=1e-40)
        assert mp.almosteq(nm.gamma_r(1), 1, rel_eps=1e-40)
        assert mp.almosteq(nm.gamma_r(4), 1 / mp.pi**2, rel_eps=1e-40)
    with pytest.raises(PoleError):
        nm.gamma_r(-2)


def test_zeta_xi():
    with PREC.workprec():
        assert rel(nm.zeta(2), mp.pi**2 / 6) < 1e-40
        assert rel(nm.zeta(4), mp.pi**4 / 90) < 1e-40
        assert rel(nm.xi(2), mp.pi / 6) < 1e-40
        # off the real axis, against mpmath's own zeta
        s = mp.mpc("0.5", "14.134725141734693790457251983562")
        assert abs(nm.zeta(s)) < 1e-25
        s = mp.mpc(2.5, 30)
        assert rel(nm.zeta(s), mp.zeta(s)) < 1e-40
    with pytest.raises(PoleError):
        nm.zeta(1)


def test_xi_functional_equation():
    with PREC.workprec():
        for s in (mp.mpf("0.3"), mp.mpc(2, 5), mp.mpf(3)):
            assert rel(nm.xi(s), nm.xi(1 - s)) < 1e-40


def test_bessel_k_half_order_and_symmetry():
    with PREC.workprec():
        for y in (mp.mpf("0.1"), mp.mpf(3), mp.mpf(25)):
            assert rel(nm.bessel_k(mp.mpf(1) / 2, y), mp.sqrt(mp.pi / (2 * y)) * mp.exp(-y)) < 1e-40
        for nu in (mp.mpf("1.3"), mp.mpc(2, 7), mp.mpc(0, 9.5)):
            assert rel(nm.bessel_k(nu, 2), nm.bessel_k(-nu, 2)) < 1e-40


@pytest.mark.parametrize("method", ["integral", "series"])
@pytest.mark.parametrize("nu", [0, 1, 2.5, 1j * 9.533695261353557, 3 + 2j])
def test_bessel_k_routes_match_mpmath(method, nu):
    with PREC.workprec():
        for y in (mp.mpf("0.3"), mp.mpf(4), mp.mpf(12)):
            assert rel(nm.bessel_k(nu, y, method=method), mp.besselk(nu, y)) < 1e-35


def test_bessel_k_asymptotic_overlap():
    with PREC.workprec():
        for y in np.linspace(20, 40, 9):
            for nu in (0, 2, mp.mpc(1, 3)):
                val, err = nm.bessel_k_asymptotic(nu, y)
                ref = nm.bessel_k(nu, y, method="integral")
                assert abs(val - ref) <= max(err, 1e-40 * abs(ref))


def test_bessel_k_domain():
    with pytest.raises(DomainError):
        nm.bessel_k(1, 0)
    with pytest.raises(DomainError):
        nm.bessel_k(1, -2)


def test_sigma_nu_values():
    assert nm.sigma_nu(1, mp.mpf("0.7")) == 1
    assert nm.sigma_nu(6, 1) == 12
    assert nm.sigma_nu(4, -3) == mp.mpf(73) / 64
    with pytest.raises(DomainError):
        nm.sigma_nu(0, 1)


def test_sigma_nu_multiplicative_exhaustive():
    nu = mp.mpf("-0.37")
    table = {n: nm.sigma_nu(n, nu) for n in range(1, 2501)}
    with PREC.workprec():
        for m in range(1, 51):
            for n in range(1, 51):
                if math.gcd(m, n) == 1:
                    assert rel(table[m * n], table[m] * table[n]) < 1e-40


def test_pochhammer():
    assert nm.pochhammer(3, 2) == 12
    assert nm.pochhammer(-2, 3) == 0
    assert nm.pochhammer(5, 0) == 1
    with pytest.raises(DomainError):
        nm.pochhammer(1, -1)


def test_arithmetic_helpers():
    assert nm.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert nm.tau(6) == 4 and nm.tau(5) == 2 and nm.tau(1) == 1
    assert nm.factorize(360) == {2: 3, 3: 2, 5: 1}
    assert list(nm.primes_up_to(20)) == [2, 3, 5, 7, 11, 13, 17, 19]
