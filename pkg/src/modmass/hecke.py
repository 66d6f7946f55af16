"""Hecke eigenforms of level one and their L-series.

Eigenvalues use the arithmetic normalization lambda(n) = a(n) / n**((k-1)/2),
so that Deligne's bound reads |lambda(p)| <= 2.  For one-dimensional S_k the
q-expansion coefficients a(n) are exact integers; otherwise the T_2 matrix is
diagonalized in mpmath and the coefficients are high-precision reals.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import mpmath as mp
import numpy as np
from scipy import special

from .errors import (
    ClusteringError,
    ConvergenceWarning,
    DomainError,
    RangeError,
    UnsupportedWeightError,
)
from .numerics import Precision, primes_up_to, smallest_prime_factor
from .qseries import QSeries, delta, dim_cusp_forms, eisenstein_series

# (a, b) with E4^a E6^b of weight k' = k - 12 m
_TAIL = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 14: (2, 1)}

DEFAULT_N = 10_000


def _check_weight(k):
    if int(k) != k or k % 2 or k < 12:
        raise UnsupportedWeightError(f"weight must be an even integer >= 12, got {k!r}")
    if dim_cusp_forms(k) == 0:
        raise UnsupportedWeightError(f"S_{k} is zero")
    return int(k)


@lru_cache(maxsize=16)
def _building_blocks(N):
    return eisenstein_series(4, N), eisenstein_series(6, N), delta(N)


def victor_miller_basis(k, N):
    """Echelonized integral basis of S_k to order q^N.

    Element i (0-based) has q-coefficient delta_{i+1, j} for 1 <= j <= dim.
    """
    k = _check_weight(k)
    d = dim_cusp_forms(k)
    if N < d:
        raise DomainError(f"N={N} is smaller than dim S_{k} = {d}")
    m = k // 12 - (1 if k % 12 == 2 else 0)
    a, b = _TAIL[k - 12 * m]
    E4, E6, D = _building_blocks(N)
    tail = (E4**a) * (E6**b)
    E6sq = E6 * E6
    rows = []
    for j in range(1, m + 1):
        g = (D**j) * (E6sq ** (m - j)) * tail
        rows.append(list(g.coeffs))
    # leading coefficient of row j sits at q^(j) and equals 1: clear upwards
    for i in range(d - 1, -1, -1):
        for r in range(i):
            c = rows[r][i + 1]
            if c:
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[i])]
    return [QSeries(k, row) for row in rows]


def hecke_t2(series_coeffs, k, n_max):
    """Coefficients 1..n_max of T_2 applied to a q-expansion (needs 2 n_max terms)."""
    out = []
    for n in range(1, n_max + 1):
        v = series_coeffs[2 * n]
        if n % 2 == 0:
            v += 2 ** (k - 1) * series_coeffs[n // 2]
        out.append(v)
    return out


@dataclass(frozen=True, eq=False)
class HeckeEigenform:
    """A normalized (a(1) = 1) Hecke eigenform of weight k on SL2(Z).

    ``coeffs[n]`` is a(n) for 0 <= n <= N (exact ints when ``exact``).  The form
    is immutable; derived tables are cached on first use.
    """

    k: int
    coeffs: tuple
    index: int = 0
    exact: bool = True
    prec: Precision = field(default_factory=Precision.default)

    @property
    def N(self):
        return len(self.coeffs) - 1

    @property
    def weight(self):
        return self.k

    @property
    def label(self):
        return f"{self.k}.{self.index}"

    def __repr__(self):
        return f"HeckeEigenform(k={self.k}, index={self.index}, N={self.N}, exact={self.exact})"

    def a(self, n):
        if n < 1 or n > self.N:
            raise RangeError(f"a({n}) outside stored range 1..{self.N}")
        return self.coeffs[n]

    def lam(self, n):
        """lambda(n) as an mpf; beyond N it is rebuilt from stored prime powers."""
        if n < 1:
            raise DomainError(f"lambda is defined for n >= 1, got {n}")
        with self.prec.workprec():
            if n <= self.N:
                return mp.mpf(self.coeffs[n]) / mp.mpf(n) ** (mp.mpf(self.k - 1) / 2)
            out = mp.mpf(1)
            for p, e in _factor(n).items():
                out *= self.lam_prime_power(p, e)
            return out

    def lam_prime_power(self, p, e):
        """lambda(p^e) through lambda(p) lambda(p^r) = lambda(p^{r+1}) + lambda(p^{r-1})."""
        if p > self.N:
            raise RangeError(f"prime {p} exceeds the stored range N={self.N}")
        with self.prec.workprec():
            lp = self.lam(p)
            prev, cur = mp.mpf(1), lp
            if e == 0:
                return prev
            for _ in range(e - 1):
                prev, cur = cur, lp * cur - prev
            return cur

    @cached_property
    def lambdas(self):
        """float64 array with lambdas[n] = lambda(n) (index 0 unused, set to 0)."""
        n = np.arange(self.N + 1, dtype=float)
        a = np.array([float(c) for c in self.coeffs])
        out = np.zeros(self.N + 1)
        out[1:] = a[1:] / n[1:] ** ((self.k - 1) / 2)
        out.setflags(write=False)
        return out

    def lambdas_of_squares(self, M):
        """float64 array with entry m equal to lambda(m^2), for m <= M <= N."""
        if M > self.N:
            raise RangeError(f"lambda(m^2) needs primes up to {M}, stored N={self.N}")
        lam = self.lambdas
        spf = smallest_prime_factor(M)
        out = np.zeros(M + 1)
        out[1] = 1.0
        for m in range(2, M + 1):
            p = int(spf[m])
            e, r = 0, m
            while r % p == 0:
                r //= p
                e += 1
            lp = lam[p]
            # lambda(p^{2e}) by the two-term recursion
            prev, cur = 1.0, lp
            for _ in range(2 * e - 1):
                prev, cur = cur, lp * cur - prev
            out[m] = cur * out[r]
        return out

    @cached_property
    def l_sym2_at_1(self):
        return l_sym2(self, 1.0)

    @property
    def a1_sq(self):
        return a1_squared(self)


_FORM_LOCK = threading.Lock()


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=32)
def _eigenforms_cached(k, N, bits):
    prec = Precision(bits)
    d = dim_cusp_forms(k)
    basis = victor_miller_basis(k, max(N, 2 * d))
    if d == 1:
        return (HeckeEigenform(k, basis[0].coeffs[: N + 1], 0, True, prec),)
    # T_2 in the echelon basis: column j holds the coordinates of T_2 b_j
    T = [hecke_t2(b.coeffs, k, d) for b in basis]
    with prec.workprec():
        M = mp.matrix(d, d)
        for j in range(d):
            for i in range(d):
                M[i, j] = T[j][i]
        evals, evecs = mp.eig(M)
        order = sorted(range(d), key=lambda i: mp.re(evals[i]))
        gap_tol = mp.mpf(2) ** (-bits / 2) * max(abs(e) for e in evals)
        re_evals = [mp.re(evals[i]) for i in order]
        for x, y in zip(re_evals, re_evals[1:]):
            if abs(x - y) <= gap_tol:
                raise ClusteringError(f"T_2 eigenvalues {x} and {y} are not separated")
        forms = []
        for idx, i in enumerate(order):
            v = [mp.re(evecs[r, i]) for r in range(d)]
            # a(1) of sum v_r b_r is v_0 because of the echelon form
            v = [c / v[0] for c in v]
            coeffs = [mp.fsum(v[r] * basis[r].coeffs[n] for r in range(d)) for n in range(N + 1)]
            forms.append(HeckeEigenform(k, tuple(coeffs), idx, False, prec))
    return tuple(forms)


def eigenforms(k, N=DEFAULT_N, prec: Precision | None = None):
    """Normalized Hecke eigenforms of weight k, sorted by lambda(2)."""
    k = _check_weight(k)
    d = dim_cusp_forms(k)
    if N < 2 * d:
        raise DomainError(f"N={N} must be at least 2 dim S_k = {2 * d}")
    prec = Precision.default() if prec is None else prec
    with _FORM_LOCK:
        return list(_eigenforms_cached(k, int(N), prec.mantissa_bits))


def eigenform(k, N=DEFAULT_N, index=0, prec=None):
    return eigenforms(k, N, prec)[index]


# --------------------------------------------------------------------------
# L-series


class LValue(float):
    """A real L-value carrying a heuristic ``tail_bound`` and the route used."""

    def __new__(cls, value, tail_bound=0.0, method=""):
        obj = super().__new__(cls, value)
        obj.tail_bound = float(tail_bound)
        obj.method = method
        return obj

    def __repr__(self):
        return f"LValue({float(self)!r}, tail_bound={self.tail_bound:.3g}, method={self.method!r})"


# Smoothing weight V(x) = e^{-x} sum_{j<J} x^j / j!; its Mellin transform
# Gamma(w) (w+1)_{J-1}/(J-1)! has poles only at w = 0 and w <= -J.
SMOOTH_J = 12
SMOOTH_RATIO = 70


def smooth_weight(x, J=SMOOTH_J):
    return special.gammaincc(J, x)


def smooth_weight_mellin(w, J=SMOOTH_J):
    """Gamma(w) (w+1)_{J-1} / (J-1)!, continued through the removable poles at -1..-(J-1)."""
    m = -w
    if float(m).is_integer() and 1 <= m < J:
        m = int(m)
        rest = math.prod(j - m for j in range(1, J) if j != m)
        return (-1) ** m / math.factorial(m) * rest / math.factorial(J - 1)
    return special.gamma(w) * special.poch(w + 1, J - 1) / math.factorial(J - 1)


def _check_s(s, lo, name):
    if not np.isfinite(s) or s < lo:
        raise DomainError(f"{name} requires real s >= {lo}, got {s}")


def _warn_tail(val, tail, name):
    if tail > 1e-4 * abs(val):
        warnings.warn(f"{name}: tail bound {tail:.3g} exceeds 1e-4 of the value {val:.6g}", ConvergenceWarning, stacklevel=3)


def _smoothed(coeffs, s, X):
    n = np.arange(len(coeffs), dtype=float)
    n[0] = 1.0
    w = smooth_weight(n / X) * n ** (-s)
    w[0] = 0.0
    return math.fsum(coeffs * w)


def _eff_N(forms, N):
    cap = min(f.N for f in forms)
    N = cap if N is None else int(N)
    if N > cap:
        raise RangeError(f"N={N} exceeds stored eigenvalue range {cap}")
    return N


def l_series(f, s, N=None, method="dirichlet"):
    """L(s, f) = sum lambda(n) n^-s for real s > 1.

    ``dirichlet`` uses the smoothed sum; ``euler`` the product over p <= N.
    The tail bound compares the smoothed sum at X and X/2.
    """
    _check_s(s, 1.0, "l_series")
    if s == 1.0:
        raise DomainError("l_series requires s > 1")
    N = _eff_N([f], N)
    lam = f.lambdas[: N + 1]
    if method == "dirichlet":
        X = N / SMOOTH_RATIO
        val = _smoothed(lam, s, X)
        tail = abs(val - _smoothed(lam, s, X / 2))
    elif method == "euler":
        ps = primes_up_to(N)
        x = ps.astype(float) ** (-s)
        val = math.exp(-math.fsum(np.log1p(-lam[ps] * x + x * x)))
        tail = 4 * special.exp1((s - 1) * math.log(N)) * val
    else:
        raise ValueError(f"unknown method {method!r}")
    _warn_tail(val, tail, "l_series")
    return LValue(val, tail, method)


def rankin_selberg_coeffs(f, g, N):
    """Dirichlet coefficients of L(s, f x g) = zeta(2s) sum lambda_f(n) lambda_g(n) n^-s."""
    c = f.lambdas[: N + 1] * g.lambdas[: N + 1]
    b = c.copy()
    m = 2
    while m * m <= N:
        b[m * m :: m * m] += c[1 : N // (m * m) + 1]
        m += 1
    return b


def _same_form(f, g):
    return f is g or (f.k == g.k and f.index == g.index and f.coeffs[: 50] == g.coeffs[: 50])


def l_rankin_selberg(f, g, s, N=None, method="dirichlet"):
    r"""L(s, f x g) = zeta(2s) sum lambda_f(n) lambda_g(n) n^-s for real s > 1.

    The smoothed Dirichlet route sums the coefficients of the full degree-4
    L-function (the zeta(2s) factor folded in), which is entire for f != g;
    summing lambda_f lambda_g alone would see the poles of 1/zeta(2s) on
    Re s = 1/4 and converge only polynomially.  For f = g the pole at s = 1,
    with residue L(1, sym^2 f), is subtracted.  The ``euler`` route
    multiplies the local factors for p <= N and, for f = g, corrects for the
    missing primes by exp(E1((s-1) log N)).
    """
    _check_s(s, 1.0, "l_rankin_selberg")
    if s == 1.0:
        raise DomainError("l_rankin_selberg requires s > 1")
    N = _eff_N([f, g], N)
    same = _same_form(f, g)
    if method == "dirichlet":
        c = rankin_selberg_coeffs(f, g, N)
        X = N / SMOOTH_RATIO
        res = float(f.l_sym2_at_1) if same else 0.0

        def corrected(Xv):
            return _smoothed(c, s, Xv) - res * smooth_weight_mellin(1 - s) * Xv ** (1 - s)

        val = corrected(X)
        tail = abs(val - corrected(X / 2))
    elif method == "euler":
        ps = primes_up_to(N)
        lf, lg = f.lambdas[ps], g.lambdas[ps]
        x = ps.astype(float) ** (-s)
        a = lf * lg
        b = lf * lf + lg * lg - 2
        local = 1 - a * x + b * x * x - a * x**3 + x**4
        logv = -math.fsum(np.log(local))
        e1 = float(special.exp1((s - 1) * math.log(N)))
        if same:
            logv += e1
        val = math.exp(logv)
        tail = 4 * e1 * val if same else 2 * e1 * val
    else:
        raise ValueError(f"unknown method {method!r}")
    _warn_tail(val, tail, "l_rankin_selberg")
    return LValue(val, tail, method)


def sym2_coeffs(f, N):
    """Dirichlet coefficients of L(s, sym^2 f): sum over m^2 | n of lambda((n/m^2)^2)."""
    sq = f.lambdas_of_squares(N)
    out = np.zeros(N + 1)
    m = 1
    while m * m <= N:
        step = m * m
        out[step::step] += sq[1 : N // step + 1]
        m += 1
    return out


def l_sym2(f, s, N=None):
    """L(s, sym^2 f) for real s >= 1 by a smoothed Dirichlet sum.

    The tail bound is the change when the smoothing length is halved.
    """
    _check_s(s, 1.0, "l_sym2")
    N = _eff_N([f], N)
    c = sym2_coeffs(f, N)
    X = N / SMOOTH_RATIO
    val = _smoothed(c, s, X)
    tail = abs(val - _smoothed(c, s, X / 2))
    _warn_tail(val, tail, "l_sym2")
    return LValue(val, tail, "smoothed")


def a1_squared(f, prec: Precision | None = None):
    """|a_f(1)|^2 = 2 pi^2 (4 pi)^(k-1) / (Gamma(k) L(1, sym^2 f)) for the L^2-normalized form."""
    prec = f.prec if prec is None else prec
    with prec.workprec():
        k = f.k
        L = mp.mpf(float(f.l_sym2_at_1))
        logv = mp.log(2 * mp.pi**2) + (k - 1) * mp.log(4 * mp.pi) - mp.loggamma(k) - mp.log(L)
        return mp.exp(logv)


def analytic_conductor(f_or_k):
    k = f_or_k if isinstance(f_or_k, (int, float)) else f_or_k.k
    return (k + 1) / 2 * (k + 3) / 2


def conductor_pair(f, g):
    """prod (1 + |mu_j|) over the four shifts of the archimedean factor of L(s, f x g).

    With Gamma_R(s + mu_j), mu = ((k1+k2)/2, (k1+k2)/2 - 1, (k2-k1)/2, (k2-k1)/2 + 1).
    """
    k1 = f if isinstance(f, (int, float)) else f.k
    k2 = g if isinstance(g, (int, float)) else g.k
    k1, k2 = min(k1, k2), max(k1, k2)
    mus = ((k1 + k2) / 2, (k1 + k2) / 2 - 1, (k2 - k1) / 2, (k2 - k1) / 2 + 1)
    out = 1.0
    for m in mus:
        out *= 1 + abs(m)
    return out


# --------------------------------------------------------------------------
# Hecke property checks


@dataclass
class HeckeCheck:
    name: str
    cases: int
    failures: list
    max_error: float

    @property
    def passed(self):
        return not self.failures


def check_multiplicativity(f, N=None, tol=1e-9):
    N = _eff_N([f], N)
    lam = f.lambdas
    fails, worst, cases = [], 0.0, 0
    for m in range(2, math.isqrt(N) + 1):
        for n in range(m + 1, N // m + 1):
            if math.gcd(m, n) != 1:
                continue
            cases += 1
            err = abs(lam[m * n] - lam[m] * lam[n])
            worst = max(worst, err)
            if err > tol * max(1.0, abs(lam[m * n])):
                fails.append((m, n))
    return HeckeCheck("multiplicativity", cases, fails, worst)


def check_prime_square(f, N=None, tol=1e-9):
    N = _eff_N([f], N)
    lam = f.lambdas
    fails, worst = [], 0.0
    ps = primes_up_to(math.isqrt(N))
    for p in ps:
        p = int(p)
        err = abs(lam[p * p] - (lam[p] ** 2 - 1))
        worst = max(worst, err)
        if err > tol:
            fails.append(p)
    return HeckeCheck("prime_square", len(ps), fails, worst)


def check_prime_power_recursion(f, N=None, tol=1e-9):
    N = _eff_N([f], N)
    lam = f.lambdas
    fails, worst, cases = [], 0.0, 0
    for p in primes_up_to(math.isqrt(N)):
        p = int(p)
        q = p
        while q * p <= N:
            cases += 1
            err = abs(lam[p] * lam[q] - lam[q * p] - lam[q // p])
            worst = max(worst, err)
            if err > tol:
                fails.append((p, q))
            q *= p
    return HeckeCheck("prime_power_recursion", cases, fails, worst)


def check_deligne(f, N=None, slack=1e-12):
    N = _eff_N([f], N)
    ps = primes_up_to(N)
    vals = np.abs(f.lambdas[ps])
    fails = [int(p) for p, v in zip(ps, vals) if v > 2 + slack]
    return HeckeCheck("deligne", len(ps), fails, float(vals.max() - 2) if len(ps) else 0.0)


def hecke_suite(f, N=None):
    return [check_multiplicativity(f, N), check_prime_square(f, N), check_prime_power_recursion(f, N), check_deligne(f, N)]
