"""Asymptotics of the indirect selector: optimal alpha and sigma.

The relative error of the indirectly cross-validated bandwidth splits
into a variance term S_n and a bias term B_n, both with closed-form
constants in (alpha, sigma).  This demo locates the optimal alpha,
shows the flatness of the objective, and prints the optimal sigma
growth with sample size.
"""

import numpy as np

from icvkde import (cd_product, model_params, mse_opt, optimal_alpha,
                    relative_error_terms, sigma_opt, standard_suite,
                    theory_constants)

fun = standard_suite()["gaussian"].derivative_functionals()

# The product C_alpha * D_alpha carries all the alpha-dependence of the
# optimal mean squared error, whatever the target density.
star = optimal_alpha()
print(f"optimal alpha            = {star:.4f}")
print(f"objective at the optimum = {cd_product(star):.5f}")
print(f"limit ratio (alpha->inf) = {cd_product(1e6) / cd_product(star):.4f}")

# The penalty for a wrong alpha is mild on the large side and severe on
# the small side.
for alpha in (0.1, 1.0, star, 10.0, 100.0):
    print(f"  alpha={alpha:7.2f}: relative penalty "
          f"{cd_product(alpha) / cd_product(star):7.3f}")

# The optimal sigma grows like n^(3/8); with alpha fixed at the optimum
# the achievable MSE of the relative error shrinks like n^(-1/2).
print("\n      n     sigma_opt      mse_opt")
for n in (100, 1000, 10 ** 4, 10 ** 5):
    print(f"{n:7d}   {sigma_opt(star, n, fun):9.3f}   "
          f"{mse_opt(star, n, fun):.6f}")

# The practical model trades a little theory for finite-sample accuracy.
print("\nfitted practical model:")
for n in (100, 1000, 10 ** 4, 10 ** 5):
    alpha, sigma = model_params(n)
    t = relative_error_terms(alpha, sigma, n, fun)
    print(f"{n:7d}   alpha={alpha:7.3f}  sigma={sigma:7.3f}  "
          f"predicted mse={t.mse:.6f}")
