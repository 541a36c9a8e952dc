"""Locally adaptive bandwidths on a sharply peaked target.

A kurtotic unimodal density (broad base, narrow spike) defeats any
single global bandwidth.  Windowed cross-validation selects a bandwidth
per location; the indirect version uses the smallest local minimizer of
its criterion curve and is much more stable than windowed LSCV.
"""

import numpy as np

from icvkde import (average_squared_error, local_bandwidths, local_estimate,
                    standard_suite)

f = standard_suite()["kurtotic_unimodal"]
n = 500
data = f.sample(n, seed=4)

grid = np.round(np.arange(-30, 31) * 0.1, 10)

# Indirect local selection with a strongly negative-tailed kernel, then
# the plain windowed-LSCV comparator, both with window 0.3.
lbf_icv = local_bandwidths(data, "icv", alpha=6.0, sigma=6.0, w=0.3)
lbf_lscv = local_bandwidths(data, "lscv", w=0.3)

print("x      h_icv(x)   h_lscv(x)")
for x in (-2.0, -1.0, -0.3, 0.0, 0.3, 1.0, 2.0):
    print(f"{x:+.1f}   {lbf_icv(x):8.4f}   {lbf_lscv(x):8.4f}")

# Both bandwidth functions shrink near the spike at 0 and widen in the
# flanks; the accuracy difference shows in the average squared error
# over the standard 61-point grid.
ase_icv = average_squared_error(lambda x: local_estimate(data, lbf_icv, x), f)
ase_lscv = average_squared_error(
    lambda x: local_estimate(data, lbf_lscv, x), f)
print(f"\nASE, indirect local selection: {ase_icv:.6f}")
print(f"ASE, windowed LSCV:            {ase_lscv:.6f}")
