"""Precision policy and the classical special functions used everywhere else.

All high-precision work goes through :mod:`mpmath`.  Public functions take an
optional :class:`Precision` and evaluate inside ``mp.workprec``; results are
ordinary ``mpf``/``mpc`` values (or exact Python integers and fractions where
the mathematics allows it).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp

from .errors import DomainError, PoleError

ENV_PRECISION = "MODMASS_PRECISION_BITS"


@dataclass(frozen=True)
class Precision:
    """Working precision in mantissa bits.

    ``target_rel_error`` is the accuracy the special functions aim for; 48 bits
    are held back as guard digits.
    """

    mantissa_bits: int = 192

    def __post_init__(self):
        if int(self.mantissa_bits) != self.mantissa_bits or self.mantissa_bits < 64:
            raise DomainError(f"mantissa_bits must be an integer >= 64, got {self.mantissa_bits!r}")

    @property
    def target_rel_error(self) -> float:
        return 2.0 ** (-(self.mantissa_bits - 48))

    @classmethod
    def default(cls) -> "Precision":
        """The default precision, overridable through ``MODMASS_PRECISION_BITS``."""
        raw = os.environ.get(ENV_PRECISION)
        if raw:
            try:
                return cls(int(raw))
            except ValueError as exc:
                raise DomainError(f"bad {ENV_PRECISION}={raw!r}") from exc
        return cls()

    def workprec(self, extra: int = 0):
        return mp.workprec(self.mantissa_bits + extra)


def _prec(prec):
    return Precision.default() if prec is None else prec


def _is_nonpositive_integer(s, tol) -> bool:
    s = mp.mpmathify(s)
    re, im = mp.re(s), mp.im(s)
    if abs(im) > tol:
        return False
    n = mp.nint(re)
    return n <= 0 and abs(re - n) <= tol * max(1, abs(n))


# --------------------------------------------------------------------------
# Gamma, Gamma_R, zeta, xi


def gamma(s, prec: Precision | None = None):
    """Euler's Gamma function on the principal branch."""
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        if _is_nonpositive_integer(s, prec.target_rel_error):
            raise PoleError(f"Gamma has a pole at {s}")
        return +mp.gamma(s)


def loggamma(s, prec: Precision | None = None):
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        if _is_nonpositive_integer(s, prec.target_rel_error):
            raise PoleError(f"log Gamma has a pole at {s}")
        return +mp.loggamma(s)


def rgamma(s, prec: Precision | None = None):
    """1/Gamma(s); entire, so zero at the poles of Gamma."""
    prec = _prec(prec)
    with prec.workprec():
        return +mp.rgamma(mp.mpmathify(s))


def gamma_r(s, prec: Precision | None = None):
    r"""The archimedean factor :math:`\pi^{-s/2}\Gamma(s/2)`."""
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        if _is_nonpositive_integer(s / 2, prec.target_rel_error):
            raise PoleError(f"Gamma_R has a pole at {s}")
        return mp.pi ** (-s / 2) * mp.gamma(s / 2)


# Euler-Maclaurin defaults; N grows with |s| so the remainder stays below target.
ZETA_TERMS = 50
ZETA_CORRECTIONS = 30


@lru_cache(maxsize=8)
def _bernoulli_over_factorial(m: int, bits: int):
    with mp.workprec(bits):
        return tuple(mp.bernoulli(2 * j) / mp.factorial(2 * j) for j in range(1, m + 2))


def _zeta_em(s, n_terms: int, n_corr: int, bits: int):
    coef = _bernoulli_over_factorial(n_corr, bits)
    N = mp.mpf(n_terms)
    total = mp.fsum(mp.mpf(n) ** (-s) for n in range(1, n_terms))
    total += N ** (-s) / 2 + N ** (1 - s) / (s - 1)
    rising = s  # (s)_{2j-1}
    power = N ** (-s - 1)
    for j in range(1, n_corr + 1):
        total += coef[j - 1] * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= N * N
    remainder = abs(coef[n_corr] * rising * power)
    return total, remainder


def zeta(s, prec: Precision | None = None):
    """Riemann zeta by Euler-Maclaurin summation.

    Uses at least 50 direct terms and 30 Bernoulli corrections; the number of
    direct terms is doubled until the first omitted correction is below the
    target error.
    """
    prec = _prec(prec)
    bits = prec.mantissa_bits
    with mp.workprec(bits + 20):
        s = mp.mpmathify(s)
        if abs(s - 1) <= prec.target_rel_error:
            raise PoleError("zeta has a pole at s = 1")
        n_terms = max(ZETA_TERMS, int(abs(s) / 3) + 1)
        while True:
            val, rem = _zeta_em(s, n_terms, ZETA_CORRECTIONS, bits + 20)
            if rem <= prec.target_rel_error * max(abs(val), mp.mpf(10) ** -30) or n_terms > 10**5:
                break
            n_terms *= 2
    with prec.workprec():
        return +val


def xi(s, prec: Precision | None = None):
    r"""Completed zeta :math:`\Gamma_\mathbb{R}(s)\zeta(s)`, with xi(s) = xi(1-s) used left of 1/2."""
    prec = _prec(prec)
    with prec.workprec():
        s = mp.mpmathify(s)
        tol = prec.target_rel_error
        if abs(s) <= tol or abs(s - 1) <= tol:
            raise PoleError(f"xi has a pole at {s}")
        if mp.re(s) < 0.5:
            s = 1 - s
        return gamma_r(s, prec) * zeta(s, prec)


# --------------------------------------------------------------------------
# K-Bessel


def _bessel_k_integral(nu, y, bits):
    """K_nu(y) = int_0^oo exp(-y cosh t) cosh(nu t) dt."""
    with mp.workprec(bits + 20):
        nu = mp.mpmathify(nu)
        y = mp.mpf(y)
        target = (bits + 20) * mp.log(2) + 20
        T = mp.mpf(1)
        while y * mp.cosh(T) - abs(mp.re(nu)) * T < target + abs(mp.log(y)):
            T *= 1.25
        pieces = int(mp.ceil(T * (1 + abs(mp.im(nu))) / 2)) + 1
        nodes = mp.linspace(0, T, pieces + 1)
        val = mp.quad(lambda t: mp.exp(-y * mp.cosh(t)) * mp.cosh(nu * t), nodes)
    return val


def _bessel_i_series(nu, z):
    half = z / 2
    q = half * half
    term = half ** nu * mp.rgamma(nu + 1)
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        if abs(term) <= abs(total) * mp.eps and k > 5:
            return total


def _bessel_k_series(nu, y, bits):
    nu = mp.mpmathify(nu)
    y_f = float(y)
    extra = int(2.9 * y_f + 4.6 * abs(float(mp.im(nu))) + 4 * math.log2(2 + abs(complex(nu)))) + 40
    with mp.workprec(bits + extra):
        y = mp.mpf(y)
        n = mp.nint(mp.re(nu))
        if mp.im(nu) == 0 and mp.re(nu) == n:
            n = int(abs(n))
            q = y * y / 4
            half = y / 2
            finite = mp.mpf(0)
            if n > 0:
                finite = mp.fsum(mp.factorial(n - k - 1) / mp.factorial(k) * (-q) ** k for k in range(n))
                finite *= half ** (-n) / 2
            log_part = (-1) ** (n + 1) * mp.log(half) * _bessel_i_series(mp.mpf(n), y)
            term = mp.mpf(1) / mp.factorial(n)
            acc = mp.mpf(0)
            k = 0
            while True:
                contrib = (mp.digamma(k + 1) + mp.digamma(n + k + 1)) * term
                acc += contrib
                if abs(contrib) <= abs(acc) * mp.eps and k > 5:
                    break
                k += 1
                term *= q / (k * (n + k))
            series = (-1) ** n * half ** n / 2 * acc
            return finite + log_part + series
        return mp.pi / 2 * (_bessel_i_series(-nu, y) - _bessel_i_series(nu, y)) / mp.sin(nu * mp.pi)


def bessel_k_asymptotic(nu, y, prec: Precision | None = None):
    """Large-argument expansion of K_nu(y).

    Returns ``(value, error_estimate)``, the series being cut just before its
    smallest term; the leading correction is of size (1 + |nu|^2)/y.
    """
    prec = _prec(prec)
    with prec.workprec(20):
        nu = mp.mpmathify(nu)
        y = mp.mpf(y)
        mu4 = 4 * nu * nu
        term = mp.mpf(1)
        total = mp.mpf(1)
        k = 0
        last = abs(term)
        while True:
            k += 1
            nxt = term * (mu4 - (2 * k - 1) ** 2) / (k * 8 * y)
            if abs(nxt) >= last or k > 4 * prec.mantissa_bits:
                err = abs(nxt)
                break
            term = nxt
            total += term
            last = abs(term)
            if last <= abs(total) * mp.eps:
                err = last
                break
        scale = mp.sqrt(mp.pi / (2 * y)) * mp.exp(-y)
        return scale * total, float(abs(scale) * err)


def bessel_k(nu, y, prec: Precision | None = None, method: str = "auto"):
    """Modified Bessel function K_nu(y) for y > 0 and complex order nu.

    ``method`` is one of ``"auto"``, ``"integral"`` (cosh integral
    representation), ``"series"`` (power series of I_{+-nu}, with the
    logarithmic formula at integer order) or ``"asymptotic"``.
    """
    prec = _prec(prec)
    bits = prec.mantissa_bits
    with prec.workprec():
        y = mp.mpf(y) if not isinstance(y, mp.mpc) else y
        if mp.im(y) != 0 or y <= 0:
            raise DomainError(f"bessel_k requires y > 0, got {y}")
        y = mp.re(y)
        nu = mp.mpmathify(nu)
        if mp.re(nu) < 0:
            nu = -nu
    if method == "auto":
        if y > 30 + abs(nu) ** 2:
            val, err = bessel_k_asymptotic(nu, y, prec)
            if err <= prec.target_rel_error * abs(val):
                return val
            method = "integral"
        else:
            near_int = abs(mp.im(nu)) < 2.0 ** (-bits / 3) and 0 < abs(mp.re(nu) - mp.nint(mp.re(nu))) < 2.0 ** (-bits / 3)
            method = "integral" if near_int else "series"
    if method == "integral":
        val = _bessel_k_integral(nu, y, bits)
    elif method == "series":
        val = _bessel_k_series(nu, y, bits)
    elif method == "asymptotic":
        val = bessel_k_asymptotic(nu, y, prec)[0]
    else:
        raise ValueError(f"unknown method {method!r}")
    with prec.workprec():
        val = +val
        if mp.im(nu) == 0 and isinstance(val, mp.mpc):
            val = mp.re(val)
        return val


# --------------------------------------------------------------------------
# Arithmetic helpers


def divisors(n: int) -> list[int]:
    if n < 1:
        raise DomainError(f"divisors requires n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma_nu(n: int, nu, prec: Precision | None = None):
    """Divisor power sum sum_{d | n} d**nu.

    Exact ``int`` for non-negative integer ``nu``, exact ``Fraction`` for
    negative integer ``nu``; otherwise an mpmath number.
    """
    ds = divisors(int(n))
    if isinstance(nu, int) or (isinstance(nu, float) and nu.is_integer()):
        nu = int(nu)
        if nu >= 0:
            return sum(d**nu for d in ds)
        return sum(Fraction(1, d ** (-nu)) for d in ds)
    prec = _prec(prec)
    with prec.workprec():
        nu = mp.mpmathify(nu)
        return mp.fsum(mp.mpf(d) ** nu for d in ds)


def pochhammer(x, l: int, prec: Precision | None = None):
    """Rising factorial x (x+1) ... (x+l-1); exact for int or Fraction x."""
    if l < 0:
        raise DomainError(f"pochhammer requires l >= 0, got {l}")
    if isinstance(x, (int, Fraction)):
        out = 1 if isinstance(x, int) else Fraction(1)
        for j in range(l):
            out *= x + j
        return out
    prec = _prec(prec)
    with prec.workprec():
        x = mp.mpmathify(x)
        out = mp.mpf(1)
        for j in range(l):
            out *= x + j
        return out


def falling_ratio(top, l: int, prec: Precision | None = None):
    """Gamma(top) / Gamma(top - l) as a product of l factors."""
    if isinstance(top, (int, Fraction)):
        out = 1
        for j in range(1, l + 1):
            out *= top - j
        return out
    prec = _prec(prec)
    with prec.workprec():
        top = mp.mpmathify(top)
        out = mp.mpf(1)
        for j in range(1, l + 1):
            out *= top - j
        return out


def primes_up_to(n: int):
    """Sorted primes p <= n (numpy sieve)."""
    import numpy as np

    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.flatnonzero(sieve)


def smallest_prime_factor(n: int):
    import numpy as np

    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, int(n**0.5) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            mask = block == np.arange(p * p, n + 1, p)
            block[mask] = p
            spf[p * p :: p] = block
    return spf


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def tau(n: int) -> int:
    """Number of divisors (not Ramanujan's tau)."""
    out = 1
    for e in factorize(n).values():
        out *= e + 1
    return out
