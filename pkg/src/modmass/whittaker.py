r"""Whittaker functions W_{kappa,mu} and the special families they appear in.

W_{kappa,mu}(u) = exp(-u/2) u^(mu+1/2) U(mu - kappa + 1/2, 1 + 2 mu, u).  When
the first parameter of U is a non-positive integer U is a polynomial; that
case (which covers every raised holomorphic form) is evaluated exactly here
because mpmath's hypergeometric summation stalls on it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np
from scipy import special

from .errors import DomainError
from .numerics import Precision, bessel_k, falling_ratio, pochhammer


def _prec(prec):
    return Precision.default() if prec is None else prec


def _mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def _as_nonpositive_int(a, tol=1e-30):
    a = mp.mpmathify(a)
    if abs(mp.im(a)) > tol:
        return None
    r = mp.re(a)
    n = mp.nint(r)
    if n <= 0 and abs(r - n) <= tol:
        return int(-n)
    return None


def hyperu_terminating(n, b, z):
    """U(-n, b, z) = (-1)^n sum_j C(n, j) (b+j)_{n-j} (-z)^j."""
    total = mp.mpf(0)
    for j in range(n + 1):
        total += math.comb(n, j) * mp.rf(b + j, n - j) * (-z) ** j
    return (-1) ** n * total


def whittaker_w(kappa, mu, u, prec: Precision | None = None):
    """W_{kappa,mu}(u) for u > 0 and complex kappa, mu."""
    prec = _prec(prec)
    with prec.workprec(20):
        u = mp.mpf(u)
        if u <= 0:
            raise DomainError(f"whittaker_w requires u > 0, got {u}")
        kappa, mu = mp.mpmathify(kappa), mp.mpmathify(mu)
        a = mu - kappa + mp.mpf(1) / 2
        b = 1 + 2 * mu
        n = _as_nonpositive_int(a)
        if n is not None:
            U = hyperu_terminating(n, b, u)
        else:
            n2 = _as_nonpositive_int(a - b + 1)
            if n2 is not None:
                # Kummer: U(a, b, z) = z^(1-b) U(a-b+1, 2-b, z)
                U = u ** (1 - b) * hyperu_terminating(n2, 2 - b, u)
            else:
                U = mp.hyperu(a, b, u)
        val = mp.exp(-u / 2) * u ** (mu + mp.mpf(1) / 2) * U
    with prec.workprec():
        val = +val
        if isinstance(val, mp.mpc) and mp.im(val) == 0:
            val = mp.re(val)
        return val


def _hyperu_poly_coeffs(n, b):
    """Coefficients c_j with U(-n, b, z) = sum_j c_j z^j, as floats."""
    return [(-1) ** (n + j) * math.comb(n, j) * float(special.poch(b + j, n - j)) for j in range(n + 1)]


@lru_cache(maxsize=64)
def _laguerre_rule(n, alpha):
    return special.roots_genlaguerre(n, alpha)


def _hyperu_laguerre(a, b, z, n=80):
    """U(a, b, z) = z^-a / Gamma(a) int_0^oo e^-t t^(a-1) (1 + t/z)^(b-a-1) dt for a > 0."""
    x, w = _laguerre_rule(n, a - 1)
    zz = z[..., None]
    return np.sum(w * (1 + x / zz) ** (b - a - 1), axis=-1) / special.gamma(a)


def _snap(x, tol=1e-12):
    r = round(x)
    return float(r) if abs(x - r) <= tol else x


def _horner_ascending(c, inv):
    """sum_j c_j u^(j-n) for n = len(c)-1, given inv = 1/u."""
    acc = np.zeros_like(inv)
    for cj in c:
        acc = acc * inv + cj
    return acc


def whittaker_w_array(kappa, mu, u):
    """Vectorized float64 W_{kappa,mu}(u) for real kappa, mu and an array u > 0.

    Terminating cases are polynomials; otherwise, for U(a, .) with a > 0 and
    u >= 2, generalized Gauss-Laguerre quadrature of the integral form of U
    (accurate to ~1e-15); ``scipy.special.hyperu`` covers the rest.
    """
    u = np.asarray(u, dtype=float)
    a = _snap(mu - kappa + 0.5)
    b = 1 + 2 * mu
    log_u = np.log(u)
    if float(a).is_integer() and a <= 0:
        n = int(-a)
        c = _hyperu_poly_coeffs(n, b)
        return np.exp(-u / 2 + (mu + 0.5 + n) * log_u) * _horner_ascending(c, 1.0 / u)
    a2 = _snap(a - b + 1)
    if float(a2).is_integer() and a2 <= 0:
        n = int(-a2)
        c = _hyperu_poly_coeffs(n, 2 - b)
        return np.exp(-u / 2 + (mu + 0.5 + 1 - b + n) * log_u) * _horner_ascending(c, 1.0 / u)
    out = np.empty_like(u)
    big = u >= 2.0
    if a > 0 and big.any():
        ub = u[big]
        out[big] = np.exp(-ub / 2 + (mu + 0.5 - a) * np.log(ub)) * _hyperu_laguerre(a, b, ub)
        rest = ~big
    else:
        rest = np.ones_like(u, dtype=bool)
    if rest.any():
        ur = u[rest]
        pref = np.exp(-ur / 2 + (mu + 0.5) * np.log(ur))
        out[rest] = np.where(pref == 0, 0.0, pref * special.hyperu(a, b, ur))
    return out


# --------------------------------------------------------------------------
# The holomorphic family W_{alpha+k, alpha-1/2}


def _closed_form_coeffs(alpha, k, prec):
    """c_l = (-1)^l C(k, l) Gamma(2 alpha + k)/Gamma(2 alpha + k - l), l = 0..k."""
    two_a = 2 * alpha
    if isinstance(two_a, (int, Fraction)) or (isinstance(two_a, float) and two_a.is_integer()):
        top = Fraction(two_a) + k if not isinstance(two_a, int) else two_a + k
        if isinstance(top, Fraction) and top.denominator == 1:
            top = int(top)
        return [(-1) ** l * math.comb(k, l) * falling_ratio(top, l) for l in range(k + 1)]
    with prec.workprec():
        top = _mpf(two_a) + k
        return [(-1) ** l * math.comb(k, l) * falling_ratio(top, l, prec) for l in range(k + 1)]


def _check_alpha(alpha, k, y):
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if k < 0 or int(k) != k:
        raise DomainError(f"k must be a non-negative integer, got {k}")
    if y <= 0:
        raise DomainError(f"y must be positive, got {y}")


def w_holomorphic_shift(alpha, k, y, prec: Precision | None = None):
    r"""W_{alpha+k, alpha-1/2}(y) = e^{-y/2} y^alpha sum_l y^(k-l) (-1)^l C(k,l) Gamma(2a+k)/Gamma(2a+k-l).

    The Gamma ratio is a falling factorial, exact when 2 alpha is an integer.
    """
    prec = _prec(prec)
    _check_alpha(alpha, k, y)
    coeffs = _closed_form_coeffs(alpha, int(k), prec)
    with prec.workprec(10):
        y = mp.mpf(y)
        poly = mp.fsum(_mpf(c) * y ** (k - l) for l, c in enumerate(coeffs))
        val = mp.exp(-y / 2) * y ** _mpf(alpha) * poly
    with prec.workprec():
        return +val


def w_holomorphic_shift_magnitude(alpha, k, y, prec: Precision | None = None):
    """e^{-y/2} y^alpha sum_l |c_l| y^(k-l): the scale against which cancellation is judged."""
    prec = _prec(prec)
    _check_alpha(alpha, k, y)
    coeffs = _closed_form_coeffs(alpha, int(k), prec)
    with prec.workprec():
        y = mp.mpf(y)
        poly = mp.fsum(abs(_mpf(c)) * y ** (k - l) for l, c in enumerate(coeffs))
        return mp.exp(-y / 2) * y ** _mpf(alpha) * poly


def w_holomorphic_shift_array(alpha, k, y):
    """float64 version of :func:`w_holomorphic_shift` on an array of y."""
    y = np.asarray(y, dtype=float)
    coeffs = [float(c) for c in _closed_form_coeffs(alpha, int(k), Precision())]
    inv = 1.0 / y
    acc = np.zeros_like(y)
    for c in reversed(coeffs):
        acc = acc * inv + c
    # acc = sum_l c_l y^(-l); the y^k factor joins the exponent
    return np.exp(-y / 2 + (alpha + k) * np.log(y)) * acc


def recursion_step(w_val, w_deriv, lam, mu, y):
    """W_{lambda+1,mu}(y) = (y/2 - lambda) W_{lambda,mu}(y) - y W'_{lambda,mu}(y)."""
    return (y / 2 - lam) * w_val - y * w_deriv


def recursion_chain(alpha, k, y, prec: Precision | None = None):
    """W_{alpha+k, alpha-1/2}(y) by k applications of :func:`recursion_step`.

    W_{alpha+j, alpha-1/2} is carried as e^{-y/2} y^alpha P_j(y) with P_0 = 1; the
    derivative fed to each step is the exact derivative of that form, and the
    polynomial is advanced by P_{j+1} = (y - 2 alpha - j) P_j - y P_j'.
    """
    prec = _prec(prec)
    _check_alpha(alpha, k, y)
    with prec.workprec(20):
        alpha_m = _mpf(alpha)
        y = mp.mpf(y)
        poly = [mp.mpf(1)]  # ascending powers of y
        base = mp.exp(-y / 2) * y**alpha_m
        val = base
        for j in range(int(k)):
            P = mp.polyval(poly[::-1], y)
            dP = mp.polyval([i * c for i, c in enumerate(poly)][1:][::-1], y) if len(poly) > 1 else mp.mpf(0)
            w_val = base * P
            w_deriv = base * (dP + (alpha_m / y - mp.mpf(1) / 2) * P)
            val = recursion_step(w_val, w_deriv, alpha_m + j, alpha_m - mp.mpf(1) / 2, y)
            # symbolic update of the polynomial
            new = [mp.mpf(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] += c
                new[i] -= (2 * alpha_m + j) * c
                new[i] -= i * c
            poly = new
    with prec.workprec():
        return +val


def closed_form_envelope(alpha, k, y):
    """2^k e^{-y/2} y^alpha ((2 alpha + k)^k + y^k)."""
    return 2.0**k * math.exp(-y / 2) * y**alpha * ((2 * alpha + k) ** k + y**k)


# --------------------------------------------------------------------------
# k = 0 route and Jakobson's expansion


def w_zero_complex(nu, y, prec: Precision | None = None):
    """W_{0,nu}(y) = sqrt(y/pi) K_nu(y/2) for complex nu."""
    prec = _prec(prec)
    with prec.workprec():
        y = mp.mpf(y)
        if y <= 0:
            raise DomainError(f"y must be positive, got {y}")
        K = bessel_k(nu, y / 2, prec)
        return mp.sqrt(y / mp.pi) * K


def w_zero(t, y, prec: Precision | None = None):
    """W_{0,it}(y) for real t; real-valued."""
    prec = _prec(prec)
    val = w_zero_complex(mp.mpc(0, t), y, prec)
    with prec.workprec():
        if isinstance(val, mp.mpc):
            if abs(mp.im(val)) > 1e3 * prec.target_rel_error * max(abs(val), mp.mpf(2) ** -1000):
                raise DomainError(f"W_0,it lost reality: {val}")
            val = mp.re(val)
        return val


def jakobson_coefficient(k, l):
    """(-k)_l (k)_l / ((1/2)_l 4^l l!) as an exact Fraction."""
    return Fraction(pochhammer(-k, l) * pochhammer(k, l)) / (pochhammer(Fraction(1, 2), l) * 4**l * math.factorial(l))


def jakobson_coefficient_magnitude(k, l):
    """|jakobson_coefficient(k, l)| in closed form: k/(k+l) C(k+l, 2l)."""
    if l == 0:
        return Fraction(1)
    if l > k:
        return Fraction(0)
    return Fraction(k, k + l) * math.comb(k + l, 2 * l)


def jakobson_coefficient_magnitude_as_printed(k, l):
    """The closed form k/(k+l) C(k+l, l) as it is usually quoted; see the README."""
    if l == 0:
        return Fraction(1)
    return Fraction(k, k + l) * math.comb(k + l, l)


def jakobson_f(k, t, y, prec: Precision | None = None):
    """F(k,t,y) = 2 (-1)^k sum_{l<=k} c_{k,l} y^l W_{0,l+it}(y) / Gamma(1/2 + l + it)."""
    prec = _prec(prec)
    if y <= 0:
        raise DomainError(f"y must be positive, got {y}")
    with prec.workprec():
        y_m = mp.mpf(y)
        total = mp.mpc(0)
        for l in range(int(k) + 1):
            c = jakobson_coefficient(int(k), l)
            if c == 0:
                continue
            nu = mp.mpc(l, t)
            w = w_zero_complex(nu, y_m, prec)
            total += _mpf(c) * y_m**l * w * mp.rgamma(mp.mpf(1) / 2 + nu)
        return 2 * (-1) ** int(k) * total


def jakobson_f_definition(k, t, y, prec: Precision | None = None):
    """F(k,t,y) from its definition W_{k,it}/Gamma(1/2+k+it) + W_{-k,it}/Gamma(1/2-k+it)."""
    prec = _prec(prec)
    with prec.workprec():
        it = mp.mpc(0, t)
        half = mp.mpf(1) / 2
        return whittaker_w(k, it, y, prec) * mp.rgamma(half + k + it) + whittaker_w(-k, it, y, prec) * mp.rgamma(half - k + it)


def f_bound_rhs(k, t, y, A, eps):
    """4^k max(k,1)^A sqrt(y) ((1+|t|)/y)^A (1 + (1+|t|)/y)^eps."""
    r = (1 + abs(t)) / y
    return 4.0**k * max(k, 1) ** A * math.sqrt(y) * r**A * (1 + r) ** eps
