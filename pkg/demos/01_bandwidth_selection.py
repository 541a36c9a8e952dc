"""Selecting a bandwidth three ways on one sample.

Draws 500 points from a bimodal normal mixture and compares the plain
cross-validated bandwidth, the indirectly cross-validated one, and the
oversmoothed upper bound against the exact-MISE optimum.
"""

import numpy as np

from icvkde import (gaussian_kernel, icv_capped, minimize_lscv,
                    mise_optimal_bandwidth, model_params,
                    oversmoothed_bandwidth, standard_suite)

f = standard_suite()["bimodal"]
n = 500
data = f.sample(n, seed=1)

# The benchmark nobody gets to see in practice: the bandwidth that
# minimizes the exact finite-sample MISE for this target and n.
h0 = mise_optimal_bandwidth(gaussian_kernel(), f, n)
print(f"exact-MISE optimum      h0    = {h0:.4f}")

# Plain least-squares cross-validation with the Gaussian kernel.
ucv = minimize_lscv(data)
print(f"cross-validation        h_ucv = {ucv.bandwidth:.4f}")

# Indirect cross-validation: minimize the same criterion under a
# negative-tailed selection kernel, then rescale.  The (alpha, sigma)
# pair comes from the fitted sample-size model; the oversmoothed
# bandwidth caps the known upward bias.
alpha, sigma = model_params(n)
sel = icv_capped(data, alpha, sigma)
print(f"indirect CV (capped)    h_icv = {sel.bandwidth:.4f}"
      f"   (selection bandwidth {sel.selection_bandwidth:.4f},"
      f" cap binding: {sel.boundary_hit})")

h_os = oversmoothed_bandwidth(data)
print(f"oversmoothed bound      h_os  = {h_os:.4f}")

print(f"\nrelative error vs h0: ucv {abs(ucv.bandwidth/h0-1):.1%}, "
      f"icv {abs(sel.bandwidth/h0-1):.1%}")
