"""Upper half-plane points, SL2(Z) elements, reduction and the unimodular cocycle."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class HPoint:
    """z = x + iy with y > 0; coordinates may be floats or mpf."""

    x: object
    y: object

    def __post_init__(self):
        if not self.y > 0:
            raise DomainError(f"HPoint needs y > 0, got {self.y}")

    @classmethod
    def from_complex(cls, z):
        z = mp.mpmathify(z)
        return cls(mp.re(z), mp.im(z))

    @property
    def z(self):
        return mp.mpc(self.x, self.y)

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True)
class GroupElement:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if int(v) != v:
                raise DomainError("group elements need integer entries")
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError(f"determinant of {self} is not 1")

    def __matmul__(self, other):
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    __mul__ = __matmul__

    def inverse(self):
        return GroupElement(self.d, -self.b, -self.c, self.a)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        out = IDENTITY
        for _ in range(abs(n)):
            out = out @ base
        return out

    def normalized(self):
        """Same element of PSL2(Z) with c > 0, or c = 0 and d > 0."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return GroupElement(-self.a, -self.b, -self.c, -self.d)
        return self

    def same_in_psl(self, other):
        return self.normalized() == other.normalized()

    def act(self, z):
        """Mobius action on an HPoint (or anything mpmathify accepts)."""
        zz = z.z if isinstance(z, HPoint) else mp.mpmathify(z)
        w = (self.a * zz + self.b) / (self.c * zz + self.d)
        return HPoint(mp.re(w), mp.im(w))


IDENTITY = GroupElement(1, 0, 0, 1)
T = GroupElement(1, 1, 0, 1)
S = GroupElement(0, -1, 1, 0)


def cocycle_j(gamma, z):
    """j_gamma(z) = (cz + d)/|cz + d|."""
    zz = z.z if isinstance(z, HPoint) else mp.mpmathify(z)
    w = gamma.c * zz + gamma.d
    return w / abs(w)


def cocycle_j_array(c, d, x, y):
    w = c * (x + 1j * y) + d
    return w / np.abs(w)


def in_fundamental_domain(z, slack=0):
    x, y = z
    return abs(x) <= 0.5 + slack and x * x + y * y >= 1 - slack


def reduce(z, max_steps=10_000):
    """Move z into the closed standard fundamental domain.

    Returns (z', gamma) with gamma z = z'.  Every inversion step strictly
    increases Im z, so the loop terminates.
    """
    if not isinstance(z, HPoint):
        z = HPoint.from_complex(z)
    zz = z.z
    g = IDENTITY
    for _ in range(max_steps):
        n = int(mp.nint(mp.re(zz)))
        if n:
            zz -= n
            g = (T ** (-n)) @ g
        if abs(zz) < 1:
            zz = -1 / zz
            g = S @ g
        else:
            break
    else:
        raise DomainError(f"reduction of {z} did not terminate")
    return HPoint(mp.re(zz), mp.im(zz)), g


def reduce_array(x, y, max_steps=200):
    """Vectorized float64 reduction; returns x', y' and integer arrays a, b, c, d."""
    x = np.array(x, dtype=float, copy=True)
    y = np.array(y, dtype=float, copy=True)
    a = np.ones_like(x, dtype=np.int64)
    b = np.zeros_like(a)
    c = np.zeros_like(a)
    d = np.ones_like(a)
    for _ in range(max_steps):
        n = np.rint(x).astype(np.int64)
        x -= n
        a, b = a - n * c, b - n * d
        r2 = x * x + y * y
        inv = r2 < 1
        if not inv.any():
            break
        x = np.where(inv, -x / r2, x)
        y = np.where(inv, y / r2, y)
        a, b, c, d = np.where(inv, -c, a), np.where(inv, -d, b), np.where(inv, a, c), np.where(inv, b, d)
    return x, y, a, b, c, d
