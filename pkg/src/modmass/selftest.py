"""Quick closed-form checks, one per trivially verifiable example of each module.

``run_selftest()`` evaluates them all and returns an ExperimentReport; the
CLI's ``selftest`` subcommand prints or writes that report.
"""

from __future__ import annotations

import math
import tempfile
import warnings
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from . import numerics as nm
from .errors import ParseError, ValidationError
from .experiments import ExperimentReport, prime_sum_inequality, shifted_sum, sieve_rhs, s_l_quantity, unfolded_value
from .forms import (
    CuspForm,
    Eisenstein,
    IncompleteEisenstein,
    MaassData,
    RaisedCuspForm,
    RaisedMaassForm,
    ZeroWindow,
    BSplineBump,
    eisenstein_coset_sum,
    normalization,
)
from .geometry import IDENTITY, S, T, HPoint, cocycle_j, reduce
from .hecke import a1_squared, conductor_pair, eigenform, l_rankin_selberg, l_sym2
from .io import parse_maass
from .quadrature import integrate_fd, petersson
from .whittaker import f_bound_rhs, jakobson_f, jakobson_f_definition, recursion_step, w_holomorphic_shift, w_zero, whittaker_w

CHECKS = []


def check(module, name):
    def deco(fn):
        CHECKS.append((module, name, fn))
        return fn

    return deco


def _close(a, b, rel=1e-12):
    a, b = complex(a), complex(b)
    return abs(a - b) <= rel * max(abs(b), 1e-300)


def _rel(a, b):
    a, b = complex(a), complex(b)
    return abs(a - b) / max(abs(b), 1e-300)


# numerics ------------------------------------------------------------------


@check("numerics", "gamma(1) = 1")
def _():
    v = nm.gamma(1)
    return _close(v, 1), v


@check("numerics", "gamma(1/2) = sqrt(pi)")
def _():
    v = nm.gamma(mp.mpf(1) / 2)
    return _close(v, math.sqrt(math.pi)), v


@check("numerics", "gamma(13) = 12!")
def _():
    v = nm.gamma(13)
    return mp.nint(v) == 479001600 and _close(v, 479001600), v


@check("numerics", "gamma_r(2) = 1/pi, gamma_r(1) = 1, gamma_r(4) = 1/pi^2")
def _():
    vals = (nm.gamma_r(2), nm.gamma_r(1), nm.gamma_r(4))
    ok = _close(vals[0], 1 / math.pi) and _close(vals[1], 1) and _close(vals[2], 1 / math.pi**2)
    return ok, vals[0]


@check("numerics", "zeta(2), zeta(4), xi(2) classical values")
def _():
    ok = _close(nm.zeta(2), math.pi**2 / 6) and _close(nm.zeta(4), math.pi**4 / 90) and _close(nm.xi(2), math.pi / 6)
    return ok, nm.xi(2)


@check("numerics", "bessel_k(1/2, y) closed form and nu symmetry")
def _():
    y = mp.mpf(3)
    v = nm.bessel_k(mp.mpf(1) / 2, y)
    ok = _close(v, mp.sqrt(mp.pi / (2 * y)) * mp.exp(-y))
    ok = ok and _close(nm.bessel_k(mp.mpf("1.3"), y), nm.bessel_k(mp.mpf("-1.3"), y))
    return ok, v


@check("numerics", "sigma_nu(1, nu) = 1, sigma_nu(6, 1) = 12, sigma_nu(4, -3) = 73/64")
def _():
    v = nm.sigma_nu(4, -3)
    ok = _close(nm.sigma_nu(1, mp.mpf("0.7")), 1) and _close(nm.sigma_nu(6, 1), 12) and _close(v, 73 / 64)
    return ok, v


@check("numerics", "pochhammer(3, 2) = 12, pochhammer(-2, 3) = 0")
def _():
    return nm.pochhammer(3, 2) == 12 and nm.pochhammer(-2, 3) == 0, nm.pochhammer(3, 2)


# hecke_forms ---------------------------------------------------------------


@check("hecke_forms", "lambda(6) = lambda(2) lambda(3) at every desk weight")
def _():
    worst = 0.0
    for k in (12, 16, 18, 20, 22, 26):
        f = eigenform(k, 50)
        with f.prec.workprec():
            worst = max(worst, float(abs(f.lam(6) - f.lam(2) * f.lam(3))))
    return worst < 1e-40, worst


@check("hecke_forms", "L(2, f x f) = zeta(2) L(2, sym^2 f)")
def _():
    f = eigenform(12)
    a, b = float(l_rankin_selberg(f, f, 2)), float(nm.zeta(2)) * float(l_sym2(f, 2))
    return _rel(a, b) < 1e-10, _rel(a, b)


@check("hecke_forms", "a1_squared positive and a1^2 Gamma(k)/(4 pi)^(k-1) = 2 pi^2 / L(1, sym^2 f)")
def _():
    worst = 0.0
    ok = True
    for k in (12, 16, 18, 20, 22, 26):
        f = eigenform(k, 50)
        a = a1_squared(f)
        ok = ok and a > 0
        lhs = a * mp.gamma(k) / (4 * mp.pi) ** (k - 1)
        worst = max(worst, _rel(lhs, 2 * mp.pi**2 / float(f.l_sym2_at_1)))
    return ok and worst < 1e-12, worst


@check("hecke_forms", "conductor_pair grows with k2-k1 at fixed k1+k2")
def _():
    a, b = conductor_pair(14, 18), conductor_pair(16, 16)
    return a > b, a / b


# whittaker -----------------------------------------------------------------


@check("whittaker", "W_{6,11/2}(2) = 2^6 e^-1")
def _():
    v = w_holomorphic_shift(6, 0, 2)
    return _close(v, 64 * mp.exp(-1)), v


@check("whittaker", "recursion step coefficient vanishes at lambda = y/2 with W' = 0")
def _():
    v = recursion_step(mp.mpf("1.7"), 0, mp.mpf("1.5"), mp.mpf("0.5"), mp.mpf(3))
    return v == 0, v


@check("whittaker", "w_zero real; w_zero(0, y) = sqrt(y/pi) K_0(y/2)")
def _():
    ok = all(mp.im(mp.mpmathify(w_zero(t, y))) == 0 for t in (0, 1, 5) for y in (1, 10))
    y = mp.mpf(10)
    v = w_zero(0, y)
    return ok and _close(v, mp.sqrt(y / mp.pi) * mp.besselk(0, y / 2)), v


@check("whittaker", "F(0, t, y) = 2 W_{0,it}(y) / Gamma(1/2 + it) = definition")
def _():
    t, y = mp.mpf(3), mp.mpf(2)
    v = jakobson_f(0, t, y)
    ref = 2 * whittaker_w(0, mp.mpc(0, t), y) * mp.rgamma(mp.mpf(1) / 2 + mp.mpc(0, t))
    return _close(v, ref) and _close(v, jakobson_f_definition(0, t, y)), _rel(v, ref)


@check("whittaker", "f_bound_rhs degenerate exponents")
def _():
    y, t = 2.5, 3.0
    ok = _close(f_bound_rhs(3, t, y, 0, 0.0), 4**3 * math.sqrt(y))
    ok = ok and _close(f_bound_rhs(0, t, y, 0, 0.1), math.sqrt(y) * (1 + (1 + t) / y) ** 0.1)
    return ok, f_bound_rhs(3, t, y, 0, 0.0)


# weight_k_forms ------------------------------------------------------------


@check("weight_k_forms", "coset sum identity term, B = 0: y^s")
def _():
    r = eisenstein_coset_sum(4, HPoint(0.1, 1.3), 2.0, B=0)
    # B = 0 keeps only (0, 1) plus the continuum tail; remove the tail by hand
    from .forms import continuum_integral

    tail = 1.3 ** (1 - 2.0) * complex(continuum_integral(4, 2.0)) * float(mp.zeta(2 * 2.0 - 1, 1)) / float(nm.zeta(4))
    return _close(r.value - tail, 1.3**2.0, 1e-12), r.value - tail


@check("weight_k_forms", "E_k(z + 1, s) = E_k(z, s)")
def _():
    a = eisenstein_coset_sum(2, HPoint(0.2, 0.9), 2.0).value
    b = eisenstein_coset_sum(2, HPoint(1.2, 0.9), 2.0).value
    return _close(a, b, 1e-12), _rel(a, b)


@check("weight_k_forms", "constant term of E_2(., 2) = y^2 - (phi(2)/2) y^-1")
def _():
    E = Eisenstein(2, 2)
    y = mp.mpf(3)
    phi = nm.xi(3) / nm.xi(4)
    return _close(E.constant_term(y), y**2 - phi / 2 / y), E.constant_term(y)


@check("weight_k_forms", "incomplete Eisenstein with psi on [2, 3] vanishes at z = i")
def _():
    v = IncompleteEisenstein(0, BSplineBump(2, 3)).evaluate(HPoint(0, 1))
    return v == 0, v


@check("weight_k_forms", "raised cusp form: value at Sz = j_S(z)^k2 value at z")
def _():
    prec = nm.Precision(96)
    R = RaisedCuspForm(eigenform(12, 50), 16, prec=prec)
    with prec.workprec():
        z = HPoint(mp.mpf("0.2"), mp.mpf("1.1"))
        lhs = R.evaluate(S.act(z))
        rhs = cocycle_j(S, z) ** 16 * R.evaluate(z)
    return _close(lhs, rhs, 1e-20), _rel(lhs, rhs)


def _maass_sample():
    return MaassData(9.533695261353557, {1: 1.0, 2: 1.549304, 3: 0.246899, 4: 1.400342}, "even")


@check("weight_k_forms", "raised Maass form at k = 0 is the sqrt(4 pi n y / pi) K_it(2 pi n y) expansion")
def _():
    d = _maass_sample()
    u = RaisedMaassForm(d, 0, prec=nm.Precision(96))
    x, y = mp.mpf("0.1"), mp.mpf("1.2")
    with nm.Precision(96).workprec():
        ref = mp.fsum(
            d.c(n) / mp.sqrt(n) * 2 * mp.cos(2 * mp.pi * n * x) * mp.sqrt(4 * mp.pi * n * y / mp.pi) * mp.re(mp.besselk(mp.mpc(0, d.t), 2 * mp.pi * n * y))
            for n in range(1, d.N + 1)
        )
    v = u.evaluate(HPoint(x, y), reduce_first=False)
    return _close(v, ref, 1e-20), _rel(v, ref)


@check("weight_k_forms", "raised Maass form: even parity symmetry and T-invariance")
def _():
    u = RaisedMaassForm(_maass_sample(), 2, prec=nm.Precision(96))
    x, y = mp.mpf("0.125"), mp.mpf("1.4")
    a = u.evaluate(HPoint(x, y), reduce_first=False)
    b = u.evaluate(HPoint(-x, y), reduce_first=False)
    c = u.evaluate(HPoint(x + 1, y), reduce_first=False)
    return _close(a, c, 1e-20) and _close(abs(a), abs(b), 1e-20), _rel(a, c)


@check("weight_k_forms", "alpha^2(s, 0) = 1 and beta^2(k, k) = 1")
def _():
    a = normalization("alpha", mp.mpf("2.3"), 0)
    b = normalization("beta", 16, 16)
    return a == 1 and b == 1, a


# halfplane_quadrature ------------------------------------------------------


@check("halfplane_quadrature", "reduce(i) = (i, identity), reduce(5 + i) = (i, T^-5)")
def _():
    z1, g1 = reduce(HPoint(0, 1))
    z2, g2 = reduce(HPoint(5, 1))
    ok = (z1.x, z1.y) == (0, 1) and g1 == IDENTITY and (z2.x, z2.y) == (0, 1) and g2.same_in_psl(T ** (-5))
    return ok, g2


@check("halfplane_quadrature", "j_identity = j_T = 1, j_S(2i) = i")
def _():
    z = HPoint(0, 2)
    ok = cocycle_j(IDENTITY, z) == 1 and cocycle_j(T, z) == 1 and _close(cocycle_j(S, z), 1j)
    return ok, cocycle_j(S, z)


@check("halfplane_quadrature", "integral of 1 over the fundamental domain = pi/3")
def _():
    import numpy as np

    r = integrate_fd(lambda x, y: np.ones_like(x), tol=1e-12, y_max=1e6, tail_bound=1e-6)
    return _close(r.value + 1e-6, math.pi / 3, 1e-9), r.value.real


@check("halfplane_quadrature", "petersson(F, F) real and positive")
def _():
    F = CuspForm(eigenform(12, 50))
    r = petersson(F, F, tol=1e-8)
    return r.value.real > 0 and abs(r.value.imag) <= 1e-10 * r.value.real, r.value.real


# experiments_cli -----------------------------------------------------------


@check("experiments_cli", "unfolded side rearranged: value zeta(4) / (Gamma(13) (4 pi)^-13) = a1^2 L(2, f x f)")
def _():
    f = eigenform(12)
    v, _tail = unfolded_value(f, f, 2.0)
    lhs = v * math.pi**4 / 90 / (math.gamma(13) * (4 * math.pi) ** -13)
    rhs = float(a1_squared(f)) * float(l_rankin_selberg(f, f, 2))
    return _close(lhs, rhs, 1e-12), _rel(lhs, rhs)


@check("experiments_cli", "shifted sum with l < 0 starts at n = |l| + 1")
def _():
    f = eigenform(12, 200)
    v = shifted_sum(f, f, -3, 100)
    ref = math.fsum(abs(float(f.lam(n)) * float(f.lam(n - 3))) for n in range(4, 101))
    return _close(v, ref), v


@check("experiments_cli", "sieve_rhs(l = 6) / sieve_rhs(l = 5) = tau(6)/tau(5) = 2")
def _():
    f = eigenform(12, 2000)
    r = sieve_rhs(f, f, 6, 1000, 0.5) / sieve_rhs(f, f, 5, 1000, 0.5)
    return _close(r, 2), r


@check("experiments_cli", "s_l_quantity with psi = 0 is 0")
def _():
    f = eigenform(12, 200)
    v = s_l_quantity(f, f, 0, 1.0, psi=ZeroWindow())
    return v == 0, v


@check("experiments_cli", "prime-sum inequality at p = 2 and for K < 2")
def _():
    f = eigenform(12, 50)
    lam2 = f.lam(2)
    one = abs(lam2) <= Fraction(13, 12) + Fraction(3, 4) * (lam2**2 - 1)
    empty = prime_sum_inequality(f, 1)
    return bool(one) and empty["holds"] and empty["lhs"] == 0 == empty["rhs"], lam2


@check("experiments_cli", "Maass file parse: 3-line file has N = 2; missing c(1); duplicate index")
def _():
    good = parse_maass("maass v1 t=9.5 parity=even N=2\n1 1.0\n2 0.5\n")
    errs = []
    try:
        parse_maass("maass v1 t=9.5 parity=even N=2\n2 0.5\n")
    except ValidationError:
        errs.append("missing")
    try:
        parse_maass("maass v1 t=9.5 parity=even N=2\n1 1.0\n1 0.5\n")
    except ParseError as e:
        if e.lineno == 3:
            errs.append("dup")
    with tempfile.TemporaryDirectory() as tmp:
        from .io import ingest_maass, write_maass

        p = Path(tmp) / "m.txt"
        write_maass(good, p)
        back = ingest_maass(p)
    return good.N == 2 and errs == ["missing", "dup"] and back == good, good.N


def run_selftest(modules=None):
    rep = ExperimentReport("selftest")
    for module, name, fn in CHECKS:
        if modules is not None and module not in modules:
            continue
        try:
            with warnings.catch_warnings():
                # short truncations are deliberate here
                warnings.simplefilter("ignore")
                ok, value = fn()
        except Exception as exc:  # a crash is a failed check, reported by type
            ok, value = False, f"{type(exc).__name__}: {exc}"
        if isinstance(value, (mp.mpf, mp.mpc)):
            value = complex(value)
            value = value.real if value.imag == 0 else value
        rep.check(f"{module}: {name}", ok, value, "exact or 1e-12")
    return rep
