"""Large-a behaviour: the eta-type series and the theorem-level expansions.

The series 2 sum_k [log(1 - q_k) + q_k] over the mode ratios q_k tends, as the
cusp height a grows, to -2 log Gamma(1 - alpha) + 2 gamma alpha.  The second
half prints the term-by-term large-a and large-mu expansions of the
log-determinant.

    python3 demos/large_a_limits.py
"""

from cusp_spectra.charfn import CuspBundle
from cusp_spectra.zetadet import (
    asymptotic_logdet_a,
    asymptotic_logdet_a_alpha0,
    asymptotic_logdet_mu,
    eta_sum_limit_check,
)

bundle = CuspBundle(0.3, 1.0)
for r in eta_sum_limit_check(bundle, [1.0, 10.0, 100.0, 1000.0], corrected=True):
    print(f"a = {r.a:7g}  series {r.value:.10f}  limit {r.limit:.10f}  residual {r.residual:.2e}  max ratio {r.max_ratio:.4f}")

print()
for rep in (asymptotic_logdet_a(CuspBundle(0.3, 10.0)), asymptotic_logdet_a_alpha0(10.0),
            asymptotic_logdet_mu(CuspBundle(0.3, 2.0), 1e4)):
    print(rep.theorem_id, rep.inputs)
    for label, value in rep.term_values.items():
        print(f"  {label:16s} {value:18.10f}")
    print(f"  {'total':16s} {rep.total:18.10f}")
