import math

import mpmath as mp
import numpy as np
import pytest

from modmass.errors import DomainError, QuadratureBudgetError, WeightMismatchError
from modmass.forms import CuspForm, ConstantForm
from modmass.geometry import IDENTITY, S, T, GroupElement, HPoint, cocycle_j, cocycle_j_array, in_fundamental_domain, reduce, reduce_array
from modmass.hecke import eigenform
from modmass.quadrature import QuadratureResult, integrate_fd, petersson


def _random_elements(rng, n):
    out = []
    for _ in range(n):
        g = IDENTITY
        for _ in range(rng.integers(1, 6)):
            g = g @ (T ** int(rng.integers(-3, 4))) @ S
        out.append(g)
    return out


def test_group_basics():
    assert (S @ S).same_in_psl(IDENTITY)
    assert ((S @ T) ** 3).same_in_psl(IDENTITY)
    g = GroupElement(2, 1, 1, 1)
    assert g @ g.inverse() == IDENTITY
    with pytest.raises(DomainError):
        GroupElement(1, 1, 1, 1)
    with pytest.raises(DomainError):
        HPoint(0, 0)


def test_reduce_examples():
    z, g = reduce(HPoint(0, 1))
    assert (z.x, z.y) == (0, 1) and g == IDENTITY
    z, g = reduce(HPoint(5, 1))
    assert (z.x, z.y) == (0, 1) and g.same_in_psl(T ** (-5))


def test_reduce_brute_force():
    rng = np.random.default_rng(3)
    with mp.workprec(120):
        for _ in range(40):
            z = HPoint(mp.mpf(rng.uniform(-3, 3)), mp.mpf(10) ** rng.uniform(-2.5, 0.5))
            zr, g = reduce(z)
            assert in_fundamental_domain(zr, slack=1e-30)
            w = g.act(z)
            assert abs(w.x - zr.x) < 1e-25 and abs(w.y - zr.y) < 1e-25 * zr.y
            # no (c, d) with small entries lifts z higher than the reduction does
            best = max(z.y / abs(c * z.z + d) ** 2 for c in range(0, 12) for d in range(-60, 61) if math.gcd(c, d) == 1)
            assert best <= zr.y * (1 + mp.mpf(10) ** -20)


def test_reduce_array_matches_scalar():
    rng = np.random.default_rng(4)
    x = rng.uniform(-4, 4, 200)
    y = 10 ** rng.uniform(-2, 1, 200)
    xr, yr, a, b, c, d = reduce_array(x, y)
    assert np.all(a * d - b * c == 1)
    w = (a * (x + 1j * y) + b) / (c * (x + 1j * y) + d)
    assert np.allclose(w.real, xr, atol=1e-9) and np.allclose(w.imag, yr, rtol=1e-9)
    assert np.all(np.abs(xr) <= 0.5 + 1e-12) and np.all(xr**2 + yr**2 >= 1 - 1e-12)
    for i in range(0, 200, 17):
        zs, _ = reduce(HPoint(float(x[i]), float(y[i])))
        assert abs(float(zs.y) - yr[i]) < 1e-9 * yr[i]


def test_cocycle_values_and_relation():
    z = HPoint(0, 2)
    assert cocycle_j(IDENTITY, z) == 1 and cocycle_j(T, z) == 1
    assert abs(cocycle_j(S, z) - 1j) < 1e-30
    rng = np.random.default_rng(5)
    gs = _random_elements(rng, 20)
    with mp.workprec(120):
        for g1, g2 in zip(gs, gs[1:]):
            z = HPoint(mp.mpf(rng.uniform(-1, 1)), mp.mpf(rng.uniform(0.2, 2)))
            lhs = cocycle_j(g1 @ g2, z)
            rhs = cocycle_j(g1, g2.act(z)) * cocycle_j(g2, z)
            assert abs(lhs - rhs) < 1e-25
    v = cocycle_j_array(np.array([1]), np.array([0]), np.array([0.0]), np.array([2.0]))
    assert abs(v[0] - 1j) < 1e-15


def test_volume():
    r = integrate_fd(lambda x, y: np.ones_like(x), tol=1e-12, y_max=1e6)
    assert abs(r.value + 1e-6 - math.pi / 3) < 1e-10
    assert r.error_estimate >= 0 and r.cells_used > 0


def test_known_integrals():
    r = integrate_fd(lambda x, y: 1 / y, tol=1e-12, y_max=1e6)
    assert abs(r.value.real + 0.5e-12 - math.log(3) / 2) < 1e-10
    r = integrate_fd(lambda x, y: x * x, tol=1e-12, y_max=1e6)
    assert abs(r.value.real + 1e-6 / 12 - (math.pi / 6 - math.sqrt(3) / 4)) < 1e-10


def test_error_estimate_is_honest():
    # a peaked integrand near the corner: the reported error bounds the true one
    f = lambda x, y: np.exp(-40 * ((x - 0.45) ** 2 + (y - 0.9) ** 2))
    coarse = integrate_fd(f, tol=1e-4, y_max=10)
    fine = integrate_fd(f, tol=1e-13, y_max=10)
    assert abs(coarse.value - fine.value) <= coarse.error_estimate + 1e-14


def test_budget_and_validation():
    with pytest.raises(QuadratureBudgetError):
        integrate_fd(lambda x, y: np.sin(200 * x) * y, tol=1e-14, y_max=50, budget=20_000)
    with pytest.raises(ValueError):
        integrate_fd(lambda x, y: x, y_max=0.5)
    with pytest.raises(ValueError):
        QuadratureResult(0j, -1.0, 0, 1.0)


def test_scalar_integrand_path():
    r = integrate_fd(lambda z: 1.0, tol=1e-8, y_max=5, vectorized=False)
    assert abs(r.value - (math.pi / 3 - 1 / 5)) < 1e-7


def test_petersson_norm_and_realness():
    F = CuspForm(eigenform(12))
    r = petersson(F, F, tol=1e-12)
    assert abs(r.value.imag) < 1e-14
    assert abs(r.value.real - 1) < 1e-10
    with pytest.raises(WeightMismatchError):
        petersson(F, ConstantForm())
