"""
Mass against an incomplete Eisenstein window, weights 12 to 26
==============================================================

<E_0(.|psi) F_k, F_k> should drift toward (3/pi) Psi(-1) as k grows, and
the Eisenstein overlaps between different weights should stay below the
diagonal ones.  Six weights is far from any limit, so read the numbers as
a trend, not a verdict.  Takes about fifteen seconds.
"""
from modmass.experiments import DESK_WEIGHTS, que_scan

rep = que_scan(DESK_WEIGHTS, s=2.0)

print(" k   <E(.|psi) F_k, F_k>   target        gap")
for r in rep.rows:
    if r["kind"] == "diagonal_window":
        print(f"{r['k1']:>2}   {r['value_re']:.10f}          {r['reference']:.10f}  {r['gap']:.3e}")

print("\n k1  k2   |<E_{k2-k1} F_k1, G_k2>|   envelope")
for r in rep.rows:
    if r["kind"] == "eisenstein_overlap":
        mag = abs(complex(r["value_re"], r["value_im"]))
        print(f"{r['k1']:>3} {r['k2']:>3}   {mag:.6e}             {r['envelope']:.3e}")

print()
for line in rep.summary_lines():
    print(line)
