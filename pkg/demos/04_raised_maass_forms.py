"""
Raising a Maass form from a coefficient file
============================================

data/maass_synthetic.txt is SYNTHETIC: Hecke-multiplicative coefficients
built from random Satake angles at the spectral parameter of the first
even Maass form.  It is periodic and has the right Laplace eigenvalue, but
it is not invariant under z -> -1/z.  Swap in genuine coefficients (same
file format) to get a real cusp form.
"""
from pathlib import Path

import mpmath as mp

from modmass.experiments import maass_bound_suite
from modmass.forms import RaisedMaassForm, laplacian_numeric, lam, raising_numeric
from modmass.geometry import HPoint
from modmass.io import ingest_maass
from modmass.numerics import Precision

data = ingest_maass(Path(__file__).parent / "data" / "maass_synthetic.txt")
print(f"t = {data.t}, parity {data.parity}, {data.N} coefficients")

prec = Precision(128)
z = HPoint(mp.mpf("0.1"), mp.mpf("1.3"))
with prec.workprec():
    it = mp.mpc(0, data.t)
    for k in (0, 2, 4):
        u = RaisedMaassForm(data, k, prec=prec)
        v = u.evaluate(z, reduce_first=False)
        # every raise keeps the eigenvalue lambda(1/2 + it)
        ratio = laplacian_numeric(u, z) / v
        print(f"k = {k}: u_k(z) = {mp.nstr(v, 12)}, Delta_k u / u = {mp.nstr(ratio.real, 15)}")
        up = raising_numeric(u, z) / RaisedMaassForm(data, k + 2, prec=prec).evaluate(z, reduce_first=False)
        print(f"        K_k u_k / u_(k+2) = {mp.nstr(up, 12)}  (expect 1/2 + k/2 + it)")
    print("-lambda(1/2 + it) =", mp.nstr(-lam(mp.mpf(1) / 2 + it).real, 15))

rep = maass_bound_suite(data)
print("fitted constant for the coefficient envelope:", rep.fitted["C_maass"])
