"""Truncated q-expansions with exact integer coefficients.

Products use Kronecker substitution: both series are packed into one big
integer (fixed-width slots, little endian), multiplied with gmpy2 and
unpacked.  This is the only heavy operation needed to reach q^(10^5).
"""

from __future__ import annotations

import gmpy2

from .errors import DomainError


def _pack(coeffs, slot_bytes):
    pos = b"".join(max(c, 0).to_bytes(slot_bytes, "little") for c in coeffs)
    neg = b"".join(max(-c, 0).to_bytes(slot_bytes, "little") for c in coeffs)
    return gmpy2.mpz(int.from_bytes(pos, "little")) - gmpy2.mpz(int.from_bytes(neg, "little"))


def _unpack(value, n, slot_bytes):
    bias = 1 << (8 * slot_bytes - 1)
    offset = int.from_bytes(bias.to_bytes(slot_bytes, "little") * n, "little")
    raw = (int(value) + offset).to_bytes(n * slot_bytes, "little")
    return [int.from_bytes(raw[i : i + slot_bytes], "little") - bias for i in range(0, n * slot_bytes, slot_bytes)]


def poly_mul(a, b, n):
    """First n coefficients of the product of integer sequences a and b."""
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [0] * n
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * n
    bound = ma * mb * min(len(a), len(b))
    slot_bytes = (bound.bit_length() + 2 + 7) // 8
    prod = _pack(a, slot_bytes) * _pack(b, slot_bytes)
    total = len(a) + len(b) - 1
    out = _unpack(prod, total, slot_bytes)[:n]
    return out + [0] * (n - len(out))


class QSeries:
    """q-expansion sum_{n<=N} c_n q^n of a modular form of a given weight.

    Coefficients are Python integers.  ``N`` is the truncation order: the
    coefficients of q^0..q^N are known.
    """

    __slots__ = ("weight", "coeffs")

    def __init__(self, weight, coeffs):
        self.weight = int(weight)
        self.coeffs = tuple(int(c) for c in coeffs)
        if not self.coeffs:
            raise DomainError("QSeries needs at least one coefficient")

    @property
    def N(self):
        return len(self.coeffs) - 1

    @property
    def is_cuspidal(self):
        return self.coeffs[0] == 0

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        shown = " + ".join(f"{c}q^{n}" for n, c in enumerate(self.coeffs[:6]) if c)
        return f"QSeries(weight={self.weight}, N={self.N}, {shown} + ...)"

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.weight == other.weight and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.weight, self.coeffs))

    def truncate(self, N):
        if N > self.N:
            raise DomainError(f"cannot extend a series known to q^{self.N} to q^{N}")
        return QSeries(self.weight, self.coeffs[: N + 1])

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.weight != self.weight:
            raise DomainError(f"cannot add weights {self.weight} and {other.weight}")
        n = min(len(self), len(other))
        return QSeries(self.weight, [a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return QSeries(self.weight, [c * a for a in self.coeffs])

    def exact_div(self, c):
        if any(a % c for a in self.coeffs):
            raise DomainError(f"coefficients not divisible by {c}")
        return QSeries(self.weight, [a // c for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        n = min(len(self), len(other))
        return QSeries(self.weight + other.weight, poly_mul(self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise DomainError("negative powers are not q-series")
        result = QSeries(0, [1] + [0] * self.N)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result


def eisenstein_series(k, N):
    r"""Normalized E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n for k in {4, 6}."""
    const = {4: 240, 6: -504}
    if k not in const:
        raise DomainError(f"only E4 and E6 are provided, got k={k}")
    sigma = [0] * (N + 1)
    e = k - 1
    for d in range(1, N + 1):
        de = d**e
        for m in range(d, N + 1, d):
            sigma[m] += de
    return QSeries(k, [1] + [const[k] * s for s in sigma[1:]])


def euler_product(N):
    """prod_{n>=1} (1 - q^n) via the pentagonal number theorem."""
    coeffs = [0] * (N + 1)
    j = 0
    while True:
        hit = False
        for m in (j, -j) if j else (0,):
            e = m * (3 * m - 1) // 2
            if e <= N:
                coeffs[e] += -1 if j % 2 else 1
                hit = True
        if not hit:
            break
        j += 1
    return QSeries(0, coeffs)


def delta(N):
    """Ramanujan's Delta = q prod (1 - q^n)^24."""
    p = euler_product(N)
    p3 = p * p * p
    p24 = p3 * p3
    p24 = p24 * p24
    p24 = p24 * p24
    return QSeries(12, [0] + list(p24.coeffs[:N]))


def dim_cusp_forms(k):
    """dim S_k(SL2(Z)) for even k >= 0."""
    if k % 2 or k < 0:
        return 0
    if k == 0:
        return 0
    d = k // 12
    if k % 12 == 2:
        d -= 1
    return max(d, 0)
