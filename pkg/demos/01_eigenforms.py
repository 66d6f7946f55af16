"""
Hecke eigenforms and their normalizing L-value
==============================================

Build the weight-12 cusp form from the Victor Miller basis, look at its
Hecke eigenvalues, and recover the classical Petersson norm of Delta from
L(1, sym^2 Delta).
"""
import math

from modmass import CuspForm, eigenform, petersson
from modmass.hecke import hecke_suite

D = eigenform(12, N=2000)
print("tau(n), n <= 10:", [D.a(n) for n in range(1, 11)])

# lambda(n) = tau(n) / n^(11/2) lives in [-d(n), d(n)]
print("lambda(2), lambda(3):", float(D.lam(2)), float(D.lam(3)))
for c in hecke_suite(D):
    print(f"  {c.name}: {'ok' if c.passed else 'FAILED'}")

L1 = float(D.l_sym2_at_1)
print("L(1, sym^2 Delta) =", L1)

# the norm of the tau-normalized form, two ways
formula = math.gamma(12) * L1 / (2 * math.pi**2 * (4 * math.pi) ** 11)
F = CuspForm(D, l2_normalized=False)
quad = petersson(F, F, tol=1e-10).value.real
print(f"<Delta, Delta> from L(1, sym^2): {formula:.15e}")
print(f"<Delta, Delta> by quadrature:    {quad:.15e}")

# the L^2-normalized form then has norm 1
G = CuspForm(D)
print("||F_12||^2 =", petersson(G, G, tol=1e-10).value.real)
