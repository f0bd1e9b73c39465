"""Exact mode-0 contribution to the log-determinant, and its small-mu behaviour.

For a nontrivial character the mode-0 piece of -zeta'(0) is available in
closed form: its four parts collapse to log mu - log|g_0(i T0)| + log 2 with
T0 = sqrt(1/4 + mu).  Near mu = 0 the anchor T0 approaches the kernel point
1/2, where g_0 vanishes, and log mu + A'(0) picks up a 1/mu pole whose
coefficient is -3/4.  The script prints both facts.

    python3 demos/mode0_determinant.py
"""

from cusp_spectra.charfn import CuspBundle
from cusp_spectra.zetadet import (
    kernel_slope,
    mode0_aw_logdet_derivative,
    mode0_closed_chain,
    mode0_fp_a,
    mode0_fp_a_asymptotic_check,
)

bundle = CuspBundle(0.3, 1.0)
print(f"{'mu':>8} {'a_prime':>14} {'r_prime':>14} {'mtilde':>14} {'total':>14} {'closed form':>14}")
for mu in (0.1, 1.0, 10.0, 100.0, 1000.0):
    d = mode0_aw_logdet_derivative(mu, bundle)
    print(f"{mu:8g} {d.a_prime:14.9f} {d.r_prime:14.9f} {d.mtilde_prime:14.9f} {d.total:14.9f} "
          f"{mode0_closed_chain(mu, bundle):14.9f}")

F, p = mode0_fp_a(bundle)
print(f"\nlog mu + A'(0) ~ p/mu + F:  p = {p:.8f}, F = {F:.8f}")
print(f"slope of g_0(it) at t = 1/2: {kernel_slope(bundle):.10f}")

print("\nfinite part against its large-a expansion:")
for r in mode0_fp_a_asymptotic_check(bundle, [5.0, 20.0, 80.0]):
    print(f"  a = {r.a:5g}  finite part {r.finite_part:12.6f}  expansion {r.expansion:12.6f}  residual {r.residual:10.4f}")
