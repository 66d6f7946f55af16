import math
import warnings

import mpmath as mp
import numpy as np
import pytest

from modmass import hecke as hk
from modmass.errors import DomainError, RangeError, UnsupportedWeightError
from modmass.numerics import Precision, zeta
from modmass.qseries import QSeries, delta, dim_cusp_forms, eisenstein_series

DESK = (12, 16, 18, 20, 22, 26)

# leading coefficients of the normalized eigenforms, from standard tables
KNOWN_A = {
    12: {2: -24, 3: 252, 5: 4830, 7: -16744, 11: 534612},
    16: {2: 216, 3: -3348},
    18: {2: -528, 3: -4284},
    20: {2: 456, 3: 50652},
    22: {2: -288, 3: -128844},
    26: {2: -48, 3: -195804},
}


def test_qseries_truncation_rules():
    a = QSeries(4, [1, 2, 3, 4])
    b = QSeries(4, [1, 1, 1])
    assert (a + b).N == 2
    assert (a * QSeries(6, [1, 0, 0, 0, 0])).N == 3
    with pytest.raises(DomainError):
        a + QSeries(6, [1])
    with pytest.raises(DomainError):
        a.truncate(10)


def test_eisenstein_and_delta_series():
    E4, E6 = eisenstein_series(4, 10), eisenstein_series(6, 10)
    assert E4.coeffs[:4] == (1, 240, 2160, 6720)
    assert E6.coeffs[:4] == (1, -504, -16632, -122976)
    D = delta(10)
    assert D.is_cuspidal
    assert D.coeffs[:6] == (0, 1, -24, 252, -1472, 4830)
    # E4^3 - E6^2 = 1728 Delta
    assert ((E4 * E4 * E4) - (E6 * E6)).exact_div(1728).coeffs == D.coeffs


@pytest.mark.parametrize("k,d", [(12, 1), (14, 0), (24, 2), (26, 1), (28, 2), (36, 3)])
def test_dimension(k, d):
    assert dim_cusp_forms(k) == d


def test_victor_miller_echelon():
    for k in (12, 24, 36):
        basis = hk.victor_miller_basis(k, 20)
        d = len(basis)
        for i, b in enumerate(basis):
            assert b.is_cuspidal
            assert [b[j] for j in range(1, d + 1)] == [int(i + 1 == j) for j in range(1, d + 1)]


def test_bad_weights():
    for k in (10, 13, 14):
        with pytest.raises(UnsupportedWeightError):
            hk.eigenforms(k, 20)


@pytest.mark.parametrize("k", DESK)
def test_known_coefficients(k):
    f = hk.eigenform(k, 20)
    assert f.exact
    for n, a in KNOWN_A[k].items():
        assert f.a(n) == a
    assert f.lam(1) == 1
    with pytest.raises(RangeError):
        f.a(21)


def test_lambda_beyond_range_by_hecke_relations():
    short, long = hk.eigenform(12, 100), hk.eigenform(12, 2000)
    with short.prec.workprec():
        for n in (102, 128, 243, 1000):
            assert abs(short.lam(n) - long.lam(n)) < 1e-40
    with pytest.raises(RangeError):
        short.lam(101 * 103)


def test_dim2_weight_24():
    fs = hk.eigenforms(24, 200)
    assert len(fs) == 2
    with Precision().workprec():
        t2 = sorted(f.coeffs[2] for f in fs)
        ref = sorted([540 - 12 * mp.sqrt(144169), 540 + 12 * mp.sqrt(144169)])
        for a, b in zip(t2, ref):
            assert abs(a - b) < 1e-40 * abs(b)
        assert abs(fs[0].lam(2) - fs[1].lam(2)) > 1e-10


@pytest.mark.parametrize("k", DESK + (24, 28))
def test_hecke_suite_small(k):
    for f in hk.eigenforms(k, 400):
        for c in hk.hecke_suite(f):
            assert c.passed, (c.name, c.failures[:5])


def test_l_values_known():
    D = hk.eigenform(12)
    assert abs(float(D.l_sym2_at_1) - 0.6317929457278832) < 1e-12
    # the classical Petersson norm <Delta, Delta> = 1.0353620568043209e-6
    norm = math.gamma(12) * float(D.l_sym2_at_1) / (2 * math.pi**2 * (4 * math.pi) ** 11)
    assert abs(norm / 1.0353620568043209e-6 - 1) < 1e-9


def test_rankin_selberg_routes_agree():
    D = hk.eigenform(12)
    g = hk.eigenform(16)
    for f1, f2 in ((D, D), (D, g)):
        a = hk.l_rankin_selberg(f1, f2, 2.0)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            b = hk.l_rankin_selberg(f1, f2, 2.0, method="euler")
        assert abs(a - b) <= 2 * (a.tail_bound + b.tail_bound) + 1e-12


def test_rankin_selberg_against_sym2():
    D = hk.eigenform(12)
    lhs = hk.l_rankin_selberg(D, D, 2.0)
    rhs = float(zeta(2)) * hk.l_sym2(D, 2.0)
    assert abs(lhs / rhs - 1) < 1e-10


def test_l_series_routes():
    D = hk.eigenform(12)
    a = hk.l_series(D, 3.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        b = hk.l_series(D, 3.0, method="euler")
    assert abs(a - b) < 1e-6
    with pytest.raises(DomainError):
        hk.l_series(D, 1.0)


@pytest.mark.parametrize("k", DESK)
def test_a1_squared_identity(k):
    f = hk.eigenform(k)
    a = hk.a1_squared(f)
    assert a > 0
    with f.prec.workprec():
        lhs = a * mp.gamma(k) / (4 * mp.pi) ** (k - 1)
        assert abs(lhs / (2 * mp.pi**2 / float(f.l_sym2_at_1)) - 1) < 1e-30


def test_conductors():
    assert hk.conductor_pair(14, 18) > hk.conductor_pair(16, 16)
    assert hk.analytic_conductor(12) == 13 / 2 * 15 / 2


def test_rankin_selberg_coeffs_square_convolution():
    D = hk.eigenform(12, 100)
    c = hk.rankin_selberg_coeffs(D, D, 100)
    lam = D.lambdas
    # coefficient at 4 = lambda(4)^2 + lambda(1)^2
    assert abs(c[4] - (lam[4] ** 2 + 1)) < 1e-14
    assert abs(c[36] - (lam[36] ** 2 + lam[9] ** 2 + lam[4] ** 2 + 1)) < 1e-12
