"""
Unfolding, checked numerically
==============================

The integral of F_12 conj(G_16) E_4(z, s) over the fundamental domain
unfolds to a Gamma factor times L(s, f x g) / zeta(2s).  Here both sides
are computed independently: the left from Hecke eigenvalues, the right by
adaptive quadrature on the modular surface.
"""
from modmass import eigenform
from modmass.experiments import rs_integral, unfolded_value

f, g = eigenform(12), eigenform(16)

for s in (1.5, 2.0, 3.0):
    lhs, tail = unfolded_value(f, g, s)
    q = rs_integral(f, g, s, tol=1e-10)
    print(f"s = {s}: Dirichlet side {lhs: .12e} (tail {tail:.1e})")
    print(f"        quadrature    {q.value.real: .12e} (error {q.error_estimate:.1e}, {q.evaluations} evaluations)")
    print(f"        relative gap  {abs(q.value - lhs) / abs(lhs):.1e}")
