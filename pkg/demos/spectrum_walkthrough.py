"""Low-lying spectrum of the cusp, mode by mode.

Eigenvalues are 1/4 + r^2 where r runs over the real zeros of the mode
characteristic function.  The script lists the spectrum below lambda = 120
for a nontrivial and for the trivial character, confirms each mode's zero
count with the argument principle, and prints the Weyl ratio N(lambda)/lambda.

    python3 demos/spectrum_walkthrough.py
"""

import math

from cusp_spectra.charfn import CuspBundle
from cusp_spectra.spectrum import (
    argument_principle_count,
    counting_function,
    enumerate_eigenvalues,
    weyl_ratio,
)

LAMBDA_MAX = 120.0

for alpha in (0.3, 0.0):
    bundle = CuspBundle(alpha, 1.0)
    sl = enumerate_eigenvalues(bundle, LAMBDA_MAX)
    print(f"alpha = {alpha}: {len(sl.records)} eigenvalues below {LAMBDA_MAX:g}, "
          f"kernel present: {sl.kernel_present}, modes up to |k| = {sl.k_cutoff_used}")
    for rec in sl.records:
        if rec.k >= 0:  # -k repeats +k
            print(f"  k={rec.k:2d} j={rec.j}  r={rec.r:12.8f}  lambda={rec.lam:12.6f}")

    # the real zeros found by scanning are all the zeros near the real axis
    r_max = math.sqrt(LAMBDA_MAX - 0.25)
    for k in range(1, sl.k_cutoff_used + 1):
        found = sum(1 for rec in sl.records if rec.k == k)
        n = argument_principle_count(k, (0.0, r_max, -0.5, 0.5), bundle)
        print(f"  mode {k}: {found} real zeros, contour count {n}")

    for lam in (30.0, 60.0, 120.0):
        print(f"  N({lam:g}) = {counting_function(sl, lam)},  N/lambda = {weyl_ratio(sl, lam):.4f}")
    print()
