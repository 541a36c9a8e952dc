"""Shared numerical oracles for the test suite.

The closed-form Gaussian-mixture algebra is cross-checked against
independent oracles: adaptive quadrature over a window wide enough that
the neglected tails fall below double precision, and brute-force
definitional computations for the cross-validation criteria.
"""

import numpy as np
from scipy.integrate import quad

from icvkde.mixtures import SignedGaussianMixture


def support_window(mixture: SignedGaussianMixture, pad: float = 12.0):
    """Integration window covering every component out to `pad` scales."""
    lo = float(np.min(mixture.means - pad * mixture.scales))
    hi = float(np.max(mixture.means + pad * mixture.scales))
    return lo, hi


def quad_oracle(fn, lo, hi, points=None):
    """Adaptive quadrature with tight absolute tolerance."""
    if points is not None:
        points = [p for p in points if lo < p < hi]
    value, _ = quad(fn, lo, hi, epsabs=1e-12, epsrel=1e-12,
                    limit=400, points=points or None)
    return value


def mixture_quad(fn, mixture: SignedGaussianMixture):
    """Quadrature of `fn` over the mixture's effective support."""
    lo, hi = support_window(mixture)
    return quad_oracle(fn, lo, hi, points=list(mixture.means))


def random_mixture(rng, max_components=4, centered=False):
    """A random signed mixture for property-based checks."""
    k = int(rng.integers(1, max_components + 1))
    weights = rng.uniform(-3.0, 3.0, size=k)
    means = np.zeros(k) if centered else rng.uniform(-5.0, 5.0, size=k)
    scales = rng.uniform(0.1, 10.0, size=k)
    return SignedGaussianMixture(weights, means, scales)
