from fractions import Fraction
import math

import mpmath as mp
import numpy as np
import pytest

from modmass import whittaker as wh
from modmass.errors import DomainError
from modmass.numerics import Precision

PREC = Precision()
YS = (0.5, 1, 2, 5, 10)
ALPHAS = (1, Fraction(3, 2), 6)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_whittaker_w_against_mpmath():
    with PREC.workprec():
        for kappa, mu, u in ((6, 5.5, 2), (-3, 1.5, 7), (0, mp.mpc(0, 9.5), 3), (2, mp.mpc(0.5, 1), 0.4)):
            assert rel(wh.whittaker_w(kappa, mu, u), mp.whitw(kappa, mu, u)) < 1e-35


def test_whittaker_array_matches_mp():
    u = np.array([0.3, 1.0, 4.0, 20.0, 80.0])
    for kappa, mu in ((6, 1.5), (-6, 1.5), (2, 0.5), (0, 1.5), (-2, 2.5)):
        a = wh.whittaker_w_array(kappa, mu, u)
        b = np.array([float(wh.whittaker_w(kappa, mu, x)) for x in u])
        assert np.allclose(a, b, rtol=1e-11, atol=0)


def test_closed_form_k0_and_k1():
    with PREC.workprec():
        for a in ALPHAS:
            for y in YS:
                am = mp.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else mp.mpf(a)
                y = mp.mpf(y)
                assert rel(wh.w_holomorphic_shift(a, 0, y), y**am * mp.exp(-y / 2)) < 1e-40
                # vanishes at y = 2 alpha, so compare on the scale of the two terms
                ref = mp.exp(-y / 2) * y**am * (y - 2 * am)
                assert abs(wh.w_holomorphic_shift(a, 1, y) - ref) < 1e-40 * mp.exp(-y / 2) * y**am * (y + 2 * am)
        assert rel(wh.w_holomorphic_shift(6, 0, 2), 64 * mp.exp(-1)) < 1e-40


def test_closed_form_against_mpmath_whitw():
    with PREC.workprec():
        for a in ALPHAS:
            af = mp.mpf(a.numerator) / a.denominator if isinstance(a, Fraction) else mp.mpf(a)
            for k in (2, 5, 11):
                for y in (1, 7):
                    assert rel(wh.w_holomorphic_shift(a, k, y), mp.whitw(af + k, af - mp.mpf(1) / 2, y)) < 1e-30


def test_single_recursion_step():
    with PREC.workprec():
        a, y = mp.mpf(3) / 2, mp.mpf(2)
        base = y**a * mp.exp(-y / 2)
        deriv = base * (a / y - mp.mpf(1) / 2)
        assert rel(wh.recursion_step(base, deriv, a, a - mp.mpf(1) / 2, y), wh.w_holomorphic_shift(a, 1, y)) < 1e-40
    assert wh.recursion_step(1.7, 0, 1.5, 0.5, 3.0) == 0


@pytest.mark.parametrize("alpha", ALPHAS)
def test_recursion_matches_closed_form(alpha):
    with PREC.workprec():
        for k in range(21):
            for y in YS:
                c = wh.w_holomorphic_shift(alpha, k, y)
                r = wh.recursion_chain(alpha, k, y)
                scale = wh.w_holomorphic_shift_magnitude(alpha, k, y)
                assert abs(c - r) <= 1e-25 * scale


def _leading_ratio(a, k, y):
    with PREC.workprec():
        return wh.w_holomorphic_shift(a, k, y) / (mp.exp(-mp.mpf(y) / 2) * mp.mpf(y) ** (a + k))


def test_leading_power():
    # the first correction is exactly -k (2 alpha + k - 1) / y, so 1% at y = 1e3 needs k (2 alpha + k - 1) < 10
    for a, k in ((1, 0), (6, 0), (1, 1), (1, 2), (1.5, 1), (1.5, 2), (3, 1)):
        for y in (1e3, 1e4):
            assert abs(_leading_ratio(a, k, y) - 1) < 0.01
    for a, k in ((1, 3), (6, 8), (1.5, 12)):
        c1 = k * (2 * a + k - 1)
        for y in (1e3, 1e4):
            second = (c1 / y) ** 2
            assert abs(_leading_ratio(a, k, y) - (1 - c1 / y)) < second


def test_magnitude_envelope_dense_grid():
    for a in (1, 1.5, 3, 6):
        for k in range(0, 13):
            for y in np.geomspace(0.01, 200, 40):
                v = abs(float(wh.w_holomorphic_shift(a, k, y, Precision(96))))
                assert v <= wh.closed_form_envelope(a, k, y) * (1 + 1e-12)


def test_domain_errors():
    with pytest.raises(DomainError):
        wh.w_holomorphic_shift(0, 1, 1)
    with pytest.raises(DomainError):
        wh.w_holomorphic_shift(1, -1, 1)
    with pytest.raises(DomainError):
        wh.w_holomorphic_shift(1, 1, 0)
    with pytest.raises(DomainError):
        wh.jakobson_f(1, 0, -1)


def test_w_zero():
    with PREC.workprec():
        for t in (0, 1, 5):
            for y in (1, 10):
                v = wh.w_zero(t, y)
                assert isinstance(v, mp.mpf)
                assert rel(v, mp.sqrt(mp.mpf(y) / mp.pi) * mp.re(mp.besselk(mp.mpc(0, t), mp.mpf(y) / 2))) < 1e-35
        assert rel(wh.w_zero(3, 4), mp.whitw(0, mp.mpc(0, 3), 4)) < 1e-35


def test_w_zero_large_y_shape():
    # W_{0,it}(y) e^{y/2} -> 1 with a correction of order (1 + 4 t^2)/(4y)
    for t in (0, 1, 5):
        c1 = (1 + 4 * t * t) / 4
        for y in (400, 1600, 6400):
            with PREC.workprec():
                scaled = abs(wh.w_zero(t, y) * mp.exp(mp.mpf(y) / 2) - 1) * y
            assert abs(scaled - c1) <= 0.05 * c1


def test_jakobson_coefficients_exact():
    for k in range(0, 13):
        for l in range(0, 13):
            c = wh.jakobson_coefficient(k, l)
            assert abs(c) == wh.jakobson_coefficient_magnitude(k, l)
    # the commonly quoted C(k+l, l) form agrees only for l <= 2
    assert wh.jakobson_coefficient_magnitude_as_printed(3, 1) != wh.jakobson_coefficient_magnitude(3, 1)
    assert abs(wh.jakobson_coefficient(3, 1)) == Fraction(9, 2)


def test_jakobson_k0():
    with PREC.workprec():
        for t in (0, 1, 5):
            for y in (0.5, 2, 10):
                v = wh.jakobson_f(0, t, y)
                ref = 2 * wh.w_zero_complex(mp.mpc(0, t), y) * mp.rgamma(mp.mpf(1) / 2 + mp.mpc(0, t))
                assert rel(v, ref) < 1e-20
                assert rel(v, wh.jakobson_f_definition(0, t, y)) < 1e-20


@pytest.mark.parametrize("k", [1, 2, 5, 8])
def test_jakobson_expansion_matches_definition(k):
    with PREC.workprec():
        for t in (0.0, 1.0, 7.5):
            for y in (0.3, 2.0, 15.0):
                a = wh.jakobson_f(k, t, y)
                b = wh.jakobson_f_definition(k, t, y)
                assert abs(a - b) <= 1e-25 * max(abs(b), 1e-30)


def test_f_bound_rhs():
    assert wh.f_bound_rhs(3, 2.0, 2.5, 0, 0.0) == pytest.approx(64 * math.sqrt(2.5), rel=1e-15)
    assert wh.f_bound_rhs(0, 2.0, 2.5, 0, 0.1) == pytest.approx(math.sqrt(2.5) * (1 + 3 / 2.5) ** 0.1, rel=1e-15)
