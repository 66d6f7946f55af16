r"""Weight-k automorphic functions on SL2(Z)\H.

Every form can be evaluated pointwise in mpmath (``evaluate``) and on numpy
batches in float64 (``evaluate_array``).  Both reduce the point into the
fundamental domain first and then apply F(z) = j_gamma(z)^(-k) F(gamma z).

Raised holomorphic forms use the identification

    W_{k2/2, (k1-1)/2} = W_{alpha+k, alpha-1/2},  alpha = k1/2,  k = (k2-k1)/2,

so their Fourier coefficients come from the closed form in
:func:`modmass.whittaker.w_holomorphic_shift`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath as mp
import numpy as np
from scipy import integrate, interpolate, special

from .errors import (
    ConvergenceError,
    DomainError,
    PoleError,
    RangeError,
    StepSizeWarning,
    TruncationWarning,
    ValidationError,
    WeightMismatchError,
)
from .geometry import HPoint, cocycle_j, cocycle_j_array, reduce, reduce_array
from .hecke import HeckeEigenform, a1_squared
from .numerics import Precision, divisors, sigma_nu, xi
from .whittaker import (
    w_holomorphic_shift,
    w_holomorphic_shift_array,
    whittaker_w,
    whittaker_w_array,
)


def _prec(prec):
    return Precision.default() if prec is None else prec


def lam(s):
    """lambda(s) = s (1 - s)."""
    return s * (1 - s)


# --------------------------------------------------------------------------
# Normalization constants


def alpha_sq(s, k, prec: Precision | None = None):
    """alpha^2(s, k) = prod_{0 <= l < k/2} (lambda(s) - lambda(-l))^(-1)."""
    _check_even(k)
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        out = mp.mpf(1)
        for l in range(k // 2):
            factor = lam(s) - lam(-l)
            if abs(factor) <= prec.target_rel_error:
                raise PoleError(f"alpha^2({s}, {k}) has a pole")
            out /= factor
        return out


def alpha_sq_gamma(s, k, prec: Precision | None = None):
    """(-1)^(k/2) Gamma(s - k/2) / Gamma(s + k/2)."""
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        return (-1) ** (k // 2) * mp.gamma(s - k // 2) / mp.gamma(s + k // 2)


def beta_sq(m, k):
    """beta^2(m, k) = prod_{m/2 <= l < k/2} (lambda(m/2) - lambda(-l))^(-1), exact."""
    _check_even(m)
    _check_even(k)
    if not 2 <= m <= k:
        raise DomainError(f"beta^2 needs 2 <= m <= k, got m={m}, k={k}")
    out = Fraction(1)
    for l in range(m // 2, k // 2):
        out /= Fraction(lam(m // 2) - lam(-l))
    return out


def beta_sq_gamma(m, k):
    """Gamma(m) / (Gamma((k+m)/2) Gamma((k-m)/2 + 1)), exact."""
    return Fraction(math.factorial(m - 1), math.factorial((k + m) // 2 - 1) * math.factorial((k - m) // 2))


def normalization(kind, arg, k, prec: Precision | None = None):
    """``normalization("alpha", s, k)`` or ``normalization("beta", m, k)``: the squared constants."""
    if kind == "alpha":
        return alpha_sq(arg, k, prec)
    if kind == "beta":
        return beta_sq(arg, k)
    raise ValueError(f"kind must be 'alpha' or 'beta', got {kind!r}")


def _frac(q):
    return mp.mpf(q.numerator) / q.denominator


def _check_even(k):
    if int(k) != k or k % 2:
        raise DomainError(f"weight must be an even integer, got {k}")


# --------------------------------------------------------------------------
# Base class


class WeightKForm:
    """An automorphic function of weight ``weight``.

    Subclasses implement ``_eval_mp(x, y)`` and ``_eval_np(x, y)`` for points
    of the fundamental domain.
    """

    weight: int = 0
    n_fourier: int | None = None
    prec: Precision

    default_y_max = 10.0

    def evaluate(self, z, reduce_first=True):
        if not isinstance(z, HPoint):
            z = HPoint.from_complex(z)
        with self.prec.workprec():
            if not reduce_first:
                return self._eval_mp(mp.mpf(z.x), mp.mpf(z.y))
            zr, g = reduce(HPoint(mp.mpf(z.x), mp.mpf(z.y)))
            val = self._eval_mp(zr.x, zr.y)
            if g.c == 0:
                return val
            return val * cocycle_j(g, z) ** (-self.weight)

    __call__ = evaluate

    def evaluate_array(self, x, y, reduce_first=True):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if not reduce_first:
            return self._eval_np(x, y)
        xr, yr, a, b, c, d = reduce_array(x, y)
        val = self._eval_np(xr, yr)
        if self.weight and np.any(c != 0):
            val = val * cocycle_j_array(c, d, x, y) ** (-self.weight)
        return val

    def tail_mass(self, y_max):
        """Estimate of int_{y > y_max} |F|^2 dmu; zero unless a subclass knows better."""
        return 0.0

    def _eval_mp(self, x, y):
        raise NotImplementedError

    def _eval_np(self, x, y):
        raise NotImplementedError


def _phase(n, x):
    return mp.expjpi(2 * n * x)


# --------------------------------------------------------------------------
# Holomorphic cusp forms and their raises


class CuspForm(WeightKForm):
    """F_k(z) = y^{k/2} f(z).

    With ``l2_normalized`` f = a_f(1) sum lambda(n) n^{(k-1)/2} q^n with
    a_f(1) = sqrt(a1_squared(f)) > 0; otherwise a_f(1) = 1.
    """

    def __init__(self, f: HeckeEigenform, l2_normalized=True, n_fourier=40, prec=None):
        self.f = f
        self.weight = f.k
        self.n_fourier = int(n_fourier)
        if self.n_fourier > f.N:
            raise RangeError(f"n_fourier={n_fourier} exceeds stored N={f.N}")
        self.prec = _prec(prec)
        self.l2_normalized = l2_normalized
        self.default_y_max = float(f.k)

    @cached_property
    def a1(self):
        if not self.l2_normalized:
            return mp.mpf(1)
        with self.prec.workprec():
            return mp.sqrt(a1_squared(self.f, self.prec))

    @cached_property
    def _log_coeffs(self):
        n = np.arange(1, self.n_fourier + 1, dtype=float)
        lam_n = self.f.lambdas[1 : self.n_fourier + 1]
        return n, lam_n

    def _eval_mp(self, x, y):
        k = self.weight
        q = mp.expjpi(2 * mp.mpc(x, y))
        total = mp.mpc(0)
        qn = mp.mpc(1)
        last = 0
        for n in range(1, self.n_fourier + 1):
            qn *= q
            term = self.f.coeffs[n] * qn if self.f.exact else mp.mpf(self.f.coeffs[n]) * qn
            total += term
            last = term
        if abs(last) > 1e-3 * abs(total):
            warnings.warn(f"Fourier truncation at n={self.n_fourier}: last term is large", TruncationWarning, stacklevel=3)
        return self.a1 * y ** (mp.mpf(k) / 2) * total

    def _eval_np(self, x, y):
        k = self.weight
        n, lam_n = self._log_coeffs
        logmag = (k / 2) * np.log(y)[:, None] + ((k - 1) / 2) * np.log(n)[None, :] - 2 * np.pi * n[None, :] * y[:, None]
        terms = lam_n[None, :] * np.exp(logmag + 2j * np.pi * n[None, :] * x[:, None])
        return float(self.a1) * terms.sum(axis=1)

    def tail_mass(self, y_max):
        k = self.weight
        a1sq = float(self.a1) ** 2
        # n = 1 term: a1^2 int_Y^oo y^(k-2) e^(-4 pi y) dy, doubled for safety
        return 2 * a1sq * float(mp.gammainc(k - 1, 4 * mp.pi * y_max)) / (4 * math.pi) ** (k - 1)


class RaisedCuspForm(WeightKForm):
    r"""R_{k1}^{k2} F_{k1}: the normalized raise of an L^2-normalized cusp form.

    R F = (-1)^{(k2-k1)/2} beta(k1,k2) a_f(1) (4 pi)^{-k1/2} sum lambda(n)/sqrt(n) W_{k2/2,(k1-1)/2}(4 pi n y) e(nx).

    The factor (4 pi)^{-k1/2} is what makes the k2 = k1 case equal y^{k1/2} f(z);
    ``scale`` multiplies the whole series (used for unnormalized raises).
    """

    def __init__(self, f: HeckeEigenform, k2, n_fourier=40, prec=None, scale=1):
        k1 = f.k
        _check_even(k2)
        if k2 < k1:
            raise DomainError(f"cannot raise weight {k1} to {k2}")
        self.f = f
        self.k1 = k1
        self.weight = int(k2)
        self.n_fourier = int(n_fourier)
        if self.n_fourier > f.N:
            raise RangeError(f"n_fourier={n_fourier} exceeds stored N={f.N}")
        self.prec = _prec(prec)
        self.scale = scale
        self.default_y_max = float(k2)

    @property
    def shift(self):
        return (self.weight - self.k1) // 2

    @cached_property
    def prefactor(self):
        with self.prec.workprec():
            beta = mp.sqrt(_frac(beta_sq(self.k1, self.weight)))
            a1 = mp.sqrt(a1_squared(self.f, self.prec))
            return (-1) ** self.shift * beta * a1 * (4 * mp.pi) ** (-mp.mpf(self.k1) / 2) * self.scale

    def _eval_mp(self, x, y):
        alpha = Fraction(self.k1, 2)
        total = mp.mpc(0)
        last = 0
        for n in range(1, self.n_fourier + 1):
            w = w_holomorphic_shift(alpha, self.shift, 4 * mp.pi * n * y, self.prec)
            term = self.f.lam(n) / mp.sqrt(n) * w * _phase(n, x)
            total += term
            last = term
        if abs(last) > 1e-3 * abs(total):
            warnings.warn(f"Fourier truncation at n={self.n_fourier}: last term is large", TruncationWarning, stacklevel=3)
        return self.prefactor * total

    def _eval_np(self, x, y):
        n = np.arange(1, self.n_fourier + 1, dtype=float)
        lam_n = self.f.lambdas[1 : self.n_fourier + 1]
        u = 4 * np.pi * n[None, :] * y[:, None]
        W = w_holomorphic_shift_array(self.k1 / 2, self.shift, u)
        terms = (lam_n / np.sqrt(n))[None, :] * W * np.exp(2j * np.pi * n[None, :] * x[:, None])
        return complex(self.prefactor) * terms.sum(axis=1)

    def raised(self):
        """K_{k2} applied analytically: returns the weight k2+2 form it equals."""
        # K maps W_{k2/2,mu} -> -W_{k2/2+1,mu}; rescale the normalized k2+2 raise accordingly
        ratio = mp.sqrt(_frac(beta_sq(self.k1, self.weight)) / _frac(beta_sq(self.k1, self.weight + 2)))
        return RaisedCuspForm(self.f, self.weight + 2, self.n_fourier, self.prec, scale=self.scale * ratio)

    def lowered(self):
        """Lambda_{k2} applied analytically (zero when k2 = k1)."""
        if self.weight == self.k1:
            return None
        mu = mp.mpf(self.k1 - 1) / 2
        kappa = mp.mpf(self.weight) / 2
        coeff = mu**2 - (kappa - mp.mpf(1) / 2) ** 2
        ratio = mp.sqrt(_frac(beta_sq(self.k1, self.weight)) / _frac(beta_sq(self.k1, self.weight - 2)))
        # the sign flip of (-1)^{shift} between the two normalizations
        return RaisedCuspForm(self.f, self.weight - 2, self.n_fourier, self.prec, scale=-self.scale * coeff * ratio)

    def tail_mass(self, y_max):
        return CuspForm(self.f, True, 2, self.prec).tail_mass(y_max) * (1 + y_max) ** (2 * self.shift)


# --------------------------------------------------------------------------
# Eisenstein series


class Eisenstein(WeightKForm):
    """E_k(z, s) through its Fourier expansion.

    E_k = y^s + c_k(s) phi(s) y^{1-s} + sum_{n != 0} e_{k,n}(s) |n|^{s-1} sigma_{1-2s}(|n|) W_{sgn(n) k/2, s-1/2}(4 pi |n| y) e(nx)

    with c_k(s) = (-1)^{k/2} Gamma(s)^2 / (Gamma(s-k/2) Gamma(s+k/2)),
    e_{k,n}(s) = (-1)^{k/2} Gamma(s) / (Gamma(s +- k/2) xi(2s)) for n > 0 / n < 0.
    Gamma ratios are finite products, so nothing breaks where Gamma(s-k/2) has poles.
    """

    def __init__(self, k, s, n_fourier=None, prec=None):
        _check_even(k)
        self.weight = int(k)
        self.prec = _prec(prec)
        with self.prec.workprec():
            self.s = mp.mpmathify(s)
        if self.weight == 0 and abs(self.s - 1) <= self.prec.target_rel_error:
            raise PoleError("E_0(z, s) has a pole at s = 1")
        self.n_fourier = n_fourier
        self.default_y_max = 10.0

    def _nf(self, y):
        if self.n_fourier is not None:
            return self.n_fourier
        return 40 + int(math.ceil(10 / float(y)))

    @cached_property
    def constants(self):
        k, s = self.weight, self.s
        h = abs(k) // 2
        with self.prec.workprec():
            sign = (-1) ** (k // 2)
            down = mp.rf(s - h, h)  # Gamma(s)/Gamma(s - h)
            up = mp.rf(s, h)  # Gamma(s+h)/Gamma(s)
            phi = xi(2 * s - 1, self.prec) / xi(2 * s, self.prec)
            c_const = sign * down / up * phi
            x2 = xi(2 * s, self.prec)
            e_pos = sign / (up * x2)
            e_neg = sign * down / x2
            if k < 0:
                e_pos, e_neg = e_neg, e_pos
            return c_const, e_pos, e_neg

    def constant_term(self, y):
        c_const, _, _ = self.constants
        with self.prec.workprec():
            y = mp.mpf(y)
            return y**self.s + c_const * y ** (1 - self.s)

    def _eval_mp(self, x, y):
        s = self.s
        h = self.weight // 2
        c_const, e_pos, e_neg = self.constants
        total = y**s + c_const * y ** (1 - s)
        for n in range(1, self._nf(y) + 1):
            coef = mp.mpf(n) ** (s - 1) * mp.fsum(mp.mpf(d) ** (1 - 2 * s) for d in divisors(n))
            u = 4 * mp.pi * n * y
            wp = whittaker_w(h, s - mp.mpf(1) / 2, u, self.prec)
            wm = whittaker_w(-h, s - mp.mpf(1) / 2, u, self.prec)
            ph = _phase(n, x)
            total += coef * (e_pos * wp * ph + e_neg * wm / ph)
        return total

    def _eval_np(self, x, y):
        if mp.im(self.s) != 0:
            raise DomainError("array evaluation of E_k(z, s) supports real s only")
        s = float(mp.re(self.s))
        h = self.weight // 2
        c_const, e_pos, e_neg = (complex(c).real for c in self.constants)
        nf = self._nf(max(float(np.min(y)), 0.5)) if len(y) else 1
        n = np.arange(1, nf + 1, dtype=float)
        sig = np.array([math.fsum(d ** (1 - 2 * s) for d in divisors(int(m))) for m in range(1, nf + 1)])
        coef = n ** (s - 1) * sig
        u = 4 * np.pi * n[None, :] * y[:, None]
        wp = whittaker_w_array(h, s - 0.5, u)
        wm = whittaker_w_array(-h, s - 0.5, u)
        ph = np.exp(2j * np.pi * n[None, :] * x[:, None])
        series = (coef[None, :] * (e_pos * wp * ph + e_neg * wm * np.conj(ph))).sum(axis=1)
        return y**s + c_const * y ** (1 - s) + series


def eisenstein_fourier(k, z, s, n_fourier=None, prec=None):
    """E_k(z, s) by the Fourier expansion (reducing z first)."""
    return Eisenstein(k, s, n_fourier, prec).evaluate(z)


@dataclass(frozen=True)
class CosetSumResult:
    value: complex
    tail_estimate: float
    rows: int


def _tail_series_coeffs(s, k, J):
    """Taylor coefficients of (1 + v^2)^(-s-k/2) (1 - i v)^k up to v^J."""
    p = s + k / 2
    A = np.zeros(J + 1, dtype=complex)
    coef = 1.0
    for m in range(J // 2 + 1):
        A[2 * m] = coef
        coef *= (-p - m) / (m + 1)
    B = np.zeros(J + 1, dtype=complex)
    coef = 1.0 + 0j
    for i in range(J + 1):
        B[i] = coef
        coef *= (k - i) / (i + 1) * (-1j)
    return np.convolve(A, B)[: J + 1]


@lru_cache(maxsize=64)
def continuum_integral(k, s):
    """I_k(s) = int_R (t^2 + 1)^(-s-k/2) (t - i)^k dt by quadrature."""
    with mp.workprec(80):
        f = lambda t: (t * t + 1) ** (-mp.mpf(s) - mp.mpf(k) / 2) * (t - 1j) ** k
        return complex(mp.quad(f, [-mp.inf, -1, 0, 1, mp.inf]))


def eisenstein_coset_sum(k, z, s, B=400, J=60):
    r"""E_k(z, s) summed over Gamma_infty \ Gamma, for real s >= 1.5.

    The sum is rearranged over the full lattice with the Mobius identity:
    E = y^s + zeta(2s)^{-1} sum_{c >= 1} D_c, D_c = sum_{d in Z} y^s |cz+d|^{-2s} (conj(cz+d)/|cz+d|)^k.
    Each row is summed directly for |d + cx| <= M_c and by a Hurwitz-zeta
    expansion beyond; rows c > B are replaced by their continuum value
    y^{1-s} c^{1-2s} I_k(s), exact up to O(exp(-2 pi c y)).
    """
    _check_even(k)
    s_c = complex(s)
    if s_c.imag != 0:
        raise DomainError("eisenstein_coset_sum supports real s; use eisenstein_fourier for complex s")
    s = s_c.real
    if s < 1.5:
        raise ConvergenceError(f"coset sum needs Re(s) >= 1.5, got {s}")
    if not isinstance(z, HPoint):
        z = HPoint.from_complex(z)
    x, y = float(z.x), float(z.y)
    a = _tail_series_coeffs(s, k, J)
    js = np.arange(J + 1)
    total = 0j
    tail_est = 0.0
    last_row = None
    for c in range(1, B + 1):
        M = math.ceil(abs(c * x) + 4 * c * y) + 4
        dlo = math.ceil(-M - c * x)
        dhi = math.floor(M - c * x)
        d = np.arange(dlo, dhi + 1, dtype=float)
        w = c * x + d + 1j * c * y
        aw = np.abs(w)
        direct = np.sum(aw ** (-2 * s) * (np.conj(w) / aw) ** k)
        cy = c * y
        q = 2 * s + js
        pos = special.zeta(q, dhi + 1 + c * x)
        neg = special.zeta(q, -dlo + 1 - c * x)
        terms = a * cy**js * (pos + (-1.0) ** js * neg)
        tail = np.sum(terms)
        tail_est += abs(terms[-1])
        row = y**s * (direct + tail)
        total += row
        last_row = row
    I = continuum_integral(k, s)
    cont = y ** (1 - s) * I * float(mp.zeta(2 * s - 1, B + 1))
    total += cont
    # how far the last direct row is from its continuum value, spread over the remaining rows
    if last_row is not None:
        dev = abs(last_row - y ** (1 - s) * I * B ** (1 - 2 * s))
        tail_est += dev * B / max(2 * s - 2, 1e-300)
    z2s = float(special.zeta(2 * s))
    value = y**s + total / z2s
    return CosetSumResult(complex(value), float(tail_est / z2s), B)


# --------------------------------------------------------------------------
# Incomplete Eisenstein series


class BSplineBump:
    """Cubic B-spline window supported on [a, b] (equally spaced knots)."""

    def __init__(self, a=1.0, b=2.0):
        if not 0 < a < b:
            raise DomainError(f"window support must satisfy 0 < a < b, got [{a}, {b}]")
        self.a, self.b = float(a), float(b)
        self._spl = interpolate.BSpline.basis_element(np.linspace(self.a, self.b, 5), extrapolate=False)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        out = np.nan_to_num(self._spl(y), nan=0.0)
        return np.where((y > self.a) & (y < self.b), out, 0.0)

    def mellin(self, s):
        """Psi(s) = int psi(y) y^(s-1) dy."""
        # piecewise cubic: Gauss-Legendre on each knot interval
        knots = np.linspace(self.a, self.b, 5)
        t, w = np.polynomial.legendre.leggauss(40)
        total = []
        for lo, hi in zip(knots, knots[1:]):
            y = (lo + hi) / 2 + (hi - lo) / 2 * t
            total.append(np.sum((hi - lo) / 2 * w * self(y) * y ** (s - 1)))
        return math.fsum(total)

    @property
    def support(self):
        return self.a, self.b


class ZeroWindow:
    support = (1.0, 2.0)

    def __call__(self, y):
        return np.zeros_like(np.asarray(y, dtype=float))

    def mellin(self, s):
        return 0.0


class IncompleteEisenstein(WeightKForm):
    """E_k(z | psi) = sum over Gamma_infty \\ Gamma of psi(Im gamma z) j_gamma(z)^(-k).

    Only cosets with Im gamma z >= a contribute, so c <= (a y)^(-1/2) and,
    for each c, |cx + d|^2 <= y/a - c^2 y^2.
    """

    def __init__(self, k, psi=None, prec=None):
        _check_even(k)
        self.weight = int(k)
        self.psi = BSplineBump() if psi is None else psi
        a = self.psi.support[0]
        if a <= 0:
            raise DomainError("window support must start above 0")
        self.prec = _prec(prec)

    def cosets(self, x, y):
        """Coprime (c, d), c >= 1, with Im gamma z >= a, plus (0, 1)."""
        a = self.psi.support[0]
        out = [(0, 1)]
        cmax = int(math.floor(1 / math.sqrt(a * y))) if a * y <= 1 else 0
        for c in range(1, cmax + 1):
            r2 = y / a - c * c * y * y
            if r2 < 0:
                continue
            r = math.sqrt(r2)
            for d in range(math.ceil(-c * x - r), math.floor(-c * x + r) + 1):
                if math.gcd(c, d) == 1:
                    out.append((c, d))
        return out

    def _direct(self, x, y):
        total = 0j
        for c, d in self.cosets(float(x), float(y)):
            w = complex(c * x + d, c * y)
            h = y / abs(w) ** 2
            total += float(self.psi(h)) * (np.conj(w) / abs(w)) ** self.weight
        return total

    def evaluate(self, z, reduce_first=False):
        # the coset sum is already automorphic; no reduction needed
        if not isinstance(z, HPoint):
            z = HPoint.from_complex(z)
        return self._direct(float(z.x), float(z.y))

    __call__ = evaluate

    def evaluate_array(self, x, y, reduce_first=False):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = self.psi(y).astype(complex)
        a = self.psi.support[0]
        if np.all(a * y > 1):
            return out
        cmax = int(math.floor(1 / math.sqrt(a * float(np.min(y)))))
        for c in range(1, cmax + 1):
            r2 = y / a - c * c * y * y
            ok = r2 >= 0
            if not ok.any():
                continue
            r = np.sqrt(np.where(ok, r2, 0))
            dmin = int(np.floor(np.min(-c * x - r)))
            dmax = int(np.ceil(np.max(-c * x + r)))
            for d in range(dmin, dmax + 1):
                if math.gcd(c, d) != 1:
                    continue
                w = c * x + d + 1j * c * y
                aw = np.abs(w)
                h = y / aw**2
                out += np.where(ok, self.psi(h), 0.0) * (np.conj(w) / aw) ** self.weight
        return out

    def fourier_coefficient(self, n, y, points=2048):
        """a_n(y) = int_0^1 E_k(x + iy | psi) e(-nx) dx by the periodic trapezoid rule."""
        x = (np.arange(points) + 0.5) / points - 0.5
        v = self.evaluate_array(x, np.full_like(x, y))
        return complex(np.mean(v * np.exp(-2j * np.pi * n * x)))


# --------------------------------------------------------------------------
# Maass forms from ingested coefficients


@dataclass
class MaassData:
    t: float
    coeffs: dict
    parity: str = "even"

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValidationError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        if 1 not in self.coeffs:
            raise ValidationError("c(1) is missing")
        if self.coeffs[1] == 0:
            raise ValidationError("c(1) must be non-zero")
        for n, v in self.coeffs.items():
            if n < 1:
                raise ValidationError(f"coefficient index must be positive, got {n}")
            if not math.isfinite(v):
                raise ValidationError(f"c({n}) is not finite")

    @property
    def N(self):
        return max(self.coeffs)

    def c(self, n):
        if n not in self.coeffs:
            raise RangeError(f"c({n}) not available (N={self.N})")
        return self.coeffs[n]

    @property
    def sign(self):
        return 1 if self.parity == "even" else -1


class RaisedMaassForm(WeightKForm):
    r"""u_{j,k} from the coefficients of a weight-0 Maass cusp form u_j.

    u_{j,k} = g_+ sum_{n>0} c(n)/sqrt(n) W_{k/2,it}(4 pi n y) e(nx) + g_- sum_{n<0} eps c(|n|)/sqrt|n| W_{-k/2,it}(4 pi |n| y) e(nx),
    g_+- = (-1)^{k/2} Gamma(1/2 + it) / Gamma(1/2 +- k/2 + it), eps = +1 (even) or -1 (odd).
    """

    def __init__(self, data: MaassData, k, n_fourier=None, prec=None):
        _check_even(k)
        if k < 0:
            raise DomainError("raised Maass forms need k >= 0")
        self.data = data
        self.weight = int(k)
        self.n_fourier = data.N if n_fourier is None else int(n_fourier)
        if self.n_fourier > data.N:
            raise RangeError(f"n_fourier={self.n_fourier} exceeds the {data.N} stored coefficients")
        self.prec = _prec(prec)

    @cached_property
    def prefactors(self):
        k, t = self.weight, self.data.t
        with self.prec.workprec():
            it = mp.mpc(0, t)
            half = mp.mpf(1) / 2
            sign = (-1) ** (k // 2)
            g0 = mp.gamma(half + it)
            return sign * g0 * mp.rgamma(half + k / 2 + it), sign * g0 * mp.rgamma(half - k / 2 + it)

    def coefficient_pair(self, n, y):
        """(a_n(y), a_{-n}(y)): the e(nx) and e(-nx) coefficients at height y."""
        gp, gm = self.prefactors
        with self.prec.workprec():
            it = mp.mpc(0, self.data.t)
            u = 4 * mp.pi * n * mp.mpf(y)
            c = mp.mpf(self.data.c(n)) / mp.sqrt(n)
            k2 = mp.mpf(self.weight) / 2
            return gp * c * whittaker_w(k2, it, u, self.prec), gm * self.data.sign * c * whittaker_w(-k2, it, u, self.prec)

    def _eval_mp(self, x, y):
        total = mp.mpc(0)
        for n in range(1, self.n_fourier + 1):
            ap, am = self.coefficient_pair(n, y)
            ph = _phase(n, x)
            total += ap * ph + am / ph
        return total

    def _eval_np(self, x, y):
        return np.array([complex(self._eval_mp(mp.mpf(a), mp.mpf(b))) for a, b in zip(x, y)])


class ProductForm(WeightKForm):
    """Pointwise product of two forms; weights add."""

    def __init__(self, F, G):
        self.F, self.G = F, G
        self.weight = F.weight + G.weight
        self.prec = F.prec

    def evaluate(self, z, reduce_first=True):
        return self.F.evaluate(z, reduce_first) * self.G.evaluate(z, reduce_first)

    __call__ = evaluate

    def evaluate_array(self, x, y, reduce_first=True):
        return self.F.evaluate_array(x, y, reduce_first) * self.G.evaluate_array(x, y, reduce_first)


class ConstantForm(WeightKForm):
    def __init__(self, value=1.0, prec=None):
        self.weight = 0
        self.value = value
        self.prec = _prec(prec)

    def _eval_mp(self, x, y):
        return mp.mpf(self.value)

    def _eval_np(self, x, y):
        return np.full(np.shape(x), self.value, dtype=complex)


# --------------------------------------------------------------------------
# Differential operators by finite differences


def fd_step(y, prec: Precision):
    return max(mp.mpf(10) ** -6, mp.mpf(y) * mp.mpf(2) ** (-prec.mantissa_bits / 4))


# fourth-order central stencils
_D1 = ((-2, 1), (-1, -8), (1, 8), (2, -1))  # / (12 h)
_D2 = ((-2, -1), (-1, 16), (0, -30), (1, 16), (2, -1))  # / (12 h^2)


def _partials(F, x, y, h, need_second=False):
    ev = lambda a, b: F.evaluate(HPoint(a, b), reduce_first=False)
    fx = mp.fsum(c * ev(x + i * h, y) for i, c in _D1) / (12 * h)
    fy = mp.fsum(c * ev(x, y + i * h) for i, c in _D1) / (12 * h)
    if not need_second:
        return fx, fy, None, None
    fxx = mp.fsum(c * ev(x + i * h, y) for i, c in _D2) / (12 * h * h)
    fyy = mp.fsum(c * ev(x, y + i * h) for i, c in _D2) / (12 * h * h)
    return fx, fy, fxx, fyy


def _with_richardson(F, z, h, op):
    if not isinstance(z, HPoint):
        z = HPoint.from_complex(z)
    prec = F.prec
    with prec.workprec():
        x, y = mp.mpf(z.x), mp.mpf(z.y)
        h = fd_step(y, prec) if h is None else mp.mpf(h)
        v1 = op(F, x, y, h)
        v2 = op(F, x, y, h / 2)
        scale = max(abs(v2), abs(F.evaluate(HPoint(x, y), reduce_first=False)), mp.mpf(10) ** -30)
        if abs(v1 - v2) > 1e-6 * scale:
            warnings.warn(f"finite differences at h and h/2 disagree by {mp.nstr(abs(v1 - v2) / scale, 3)}", StepSizeWarning, stacklevel=3)
        return v2


def _raise_op(F, x, y, h):
    fx, fy, _, _ = _partials(F, x, y, h)
    return mp.mpf(F.weight) / 2 * F.evaluate(HPoint(x, y), reduce_first=False) + y * (1j * fx + fy)


def _lower_op(F, x, y, h):
    fx, fy, _, _ = _partials(F, x, y, h)
    return mp.mpf(F.weight) / 2 * F.evaluate(HPoint(x, y), reduce_first=False) + y * (1j * fx - fy)


def _laplace_op(F, x, y, h):
    fx, _, fxx, fyy = _partials(F, x, y, h, need_second=True)
    return y * y * (fxx + fyy) - 1j * F.weight * y * fx


def raising_numeric(F, z, h=None):
    """K_k F(z) = (k/2) F + y (i F_x + F_y)."""
    return _with_richardson(F, z, h, _raise_op)


def lowering_numeric(F, z, h=None):
    """Lambda_k F(z) = (k/2) F + y (i F_x - F_y)."""
    return _with_richardson(F, z, h, _lower_op)


def laplacian_numeric(F, z, h=None):
    """Delta_k F(z) = y^2 (F_xx + F_yy) - i k y F_x."""
    return _with_richardson(F, z, h, _laplace_op)


class _Pointwise(WeightKForm):
    """A form given by a scalar mp callable of (x, y) (for composing operators)."""

    def __init__(self, weight, fn, prec):
        self.weight = weight
        self.fn = fn
        self.prec = prec

    def evaluate(self, z, reduce_first=False):
        if not isinstance(z, HPoint):
            z = HPoint.from_complex(z)
        return self.fn(z)

    __call__ = evaluate


def raise_form(F, h=None):
    """The weight k+2 function K_k F as a (slow) pointwise form."""
    return _Pointwise(F.weight + 2, lambda z: raising_numeric(F, z, h), F.prec)


def raising_chain_numeric(F, z, steps, h=None):
    """K_{k+2(steps-1)} ... K_k F at z by nested finite differences.

    Nesting amplifies rounding, so the step grows with the depth.
    """
    G = F
    for i in range(steps):
        G = raise_form(G, None if h is None else h)
    return G.evaluate(z)
