"""
Shifted convolution sums against the sieve bound
================================================

sum_{n <= x} |lambda(n) lambda(n + l)| for Delta, divided by the sieve
majorant x (log x)^(-2 + delta) tau(|l|) prod_{p <= z} (1 + |lambda(p)|/p)^2.
"""
from modmass import eigenform
from modmass.experiments import m_quantity, prime_sum_inequality, shifted_sum, sieve_rhs

D = eigenform(12, N=100_010)

for delta in (0.5, 0.9):
    print(f"delta = {delta}")
    for l in (1, -1, 2, 6):
        ratios = [shifted_sum(D, D, l, x) / sieve_rhs(D, D, l, x, delta) for x in (10**3, 10**4, 10**5)]
        print(f"  l = {l:>2}: " + "  ".join(f"{r:.4f}" for r in ratios))

ps = prime_sum_inequality(D, 1000)
print(f"prime sum up to {ps['K']}: {ps['lhs']:.4f} <= {ps['rhs']:.4f}")
print("M(Delta, Delta) =", m_quantity(D, D), " with k2 = 26:", m_quantity(D, D, 26))
