"""Two-Gaussian selection kernels used by indirect cross-validation.

The family is

    L(u; alpha, sigma) = (1 + alpha) * phi(u) - (alpha / sigma) * phi(u / sigma)

with alpha >= 0, sigma > 0.  These kernels are used solely to drive
cross-validation; the final density estimate always uses the Gaussian
kernel with the appropriately rescaled bandwidth.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .mixtures import SignedGaussianMixture

_SQRTPI = math.sqrt(math.pi)
_SQRT2PI = math.sqrt(2.0 * math.pi)

#: roughness of the Gaussian kernel, R(phi) = 1/(2 sqrt(pi))
R_PHI = 1.0 / (2.0 * _SQRTPI)

_SECOND_ORDER_TOL = 1e-12

# validity range of the practical (alpha, sigma) model
MODEL_N_MIN = 100
MODEL_N_MAX = 500_000


class KernelClass(enum.Enum):
    """Exhaustive classification of the selection-kernel family."""

    CUT_OUT_MIDDLE = "cut_out_middle"      # negative dip at the origin
    DENSITY = "density"                    # a proper (nonnegative) density
    NEGATIVE_TAILS = "negative_tails"      # positive hump, negative tails
    GAUSSIAN_DEGENERATE = "gaussian"       # identically equal to phi


@dataclass(frozen=True)
class SelectionKernel:
    """A selection kernel with parameters (alpha, sigma).

    Construction rejects the locus where the second moment
    ``1 + alpha - alpha*sigma**2`` vanishes, since those kernels are not
    second order and cannot drive bandwidth selection.
    """

    alpha: float
    sigma: float

    def __post_init__(self):
        if self.alpha < 0.0:
            raise ValueError("alpha must be nonnegative")
        if self.sigma <= 0.0:
            raise ValueError("sigma must be positive")
        if abs(self.second_moment()) < _SECOND_ORDER_TOL:
            raise ValueError("degenerate: not a second-order kernel")

    @property
    def mixture(self) -> SignedGaussianMixture:
        return SignedGaussianMixture(
            [1.0 + self.alpha, -self.alpha], [0.0, 0.0], [1.0, self.sigma]
        )

    def __call__(self, u):
        return self.mixture.evaluate(u)

    def second_moment(self) -> float:
        """mu_2 = 1 + alpha - alpha * sigma**2."""
        return 1.0 + self.alpha - self.alpha * self.sigma**2

    def roughness(self) -> float:
        """R(L) in closed form."""
        a, s = self.alpha, self.sigma
        return (
            (1.0 + a) ** 2 / (2.0 * _SQRTPI)
            - 2.0 * a * (1.0 + a) / math.sqrt(2.0 * math.pi * (1.0 + s * s))
            + a * a / (2.0 * s * _SQRTPI)
        )

    def at_zero(self) -> float:
        return (1.0 + self.alpha - self.alpha / self.sigma) / _SQRT2PI

    def classify(self) -> KernelClass:
        a, s = self.alpha, self.sigma
        # sigma == 1 makes L identically Gaussian regardless of alpha
        if a == 0.0 or s == 1.0:
            return KernelClass.GAUSSIAN_DEGENERATE
        if s < a / (1.0 + a):
            return KernelClass.CUT_OUT_MIDDLE
        if s < 1.0:
            return KernelClass.DENSITY
        return KernelClass.NEGATIVE_TAILS

    def rescale_constant(self) -> float:
        """The bandwidth rescaling constant C.

        A bandwidth selected by cross-validating an L-kernel estimator is
        multiplied by C for use with the Gaussian kernel:
        C = (R(phi) mu_2L^2 / (R(L) mu_2phi^2))^(1/5), data-free.
        """
        mix = self.mixture
        mu2 = mix.even_moment(2)
        return (R_PHI * mu2 * mu2 / mix.roughness()) ** 0.2

    # -- local-behaviour diagnostics -----------------------------------

    def gamma_mixture(self) -> SignedGaussianMixture:
        """gamma = L*L - 2L as a signed mixture (autocorrelation minus 2L)."""
        mix = self.mixture
        return mix.convolve(mix) + mix.scaled(-2.0)

    def gamma(self, u):
        return self.gamma_mixture().evaluate(u)

    def rho(self, u):
        """rho(u) = u * gamma'(u), with the derivative taken analytically."""
        return u * self.gamma_mixture().derivative(u)

    def robust_to_rounding(self) -> bool:
        """Whether R(L) > 2 L(0), i.e. the cross-validation criterion
        diverges to +inf rather than -inf at h -> 0 on tied data."""
        return self.roughness() > 2.0 * self.at_zero()


def gaussian_kernel() -> SignedGaussianMixture:
    """The Gaussian kernel phi as a mixture."""
    return SignedGaussianMixture([1.0], [0.0], [1.0])


def _robustness_coefficients(sigma: float) -> tuple[float, float]:
    """Coefficients of the quadratic-in-alpha robustness condition.

    sqrt(2*pi) * (R(L) - 2 L(0)) = b*alpha^2 + 2*a*alpha - (2 - 1/sqrt(2)).
    """
    inv_rt2 = 1.0 / math.sqrt(2.0)
    a = inv_rt2 - 1.0 / math.sqrt(1.0 + sigma * sigma) - 1.0 + 1.0 / sigma
    b = inv_rt2 - 2.0 / math.sqrt(1.0 + sigma * sigma) + inv_rt2 / sigma
    return a, b


def robust_alpha_threshold(sigma: float) -> float:
    """Smallest alpha making L(.; alpha, sigma) robust to rounding.

    Solves b*alpha^2 + 2*a*alpha - (2 - 1/sqrt(2)) = 0 for its positive
    root; the discriminant is a^2 + (2 - 1/sqrt(2)) * b.  Defined only on
    the negative-tailed branch sigma > 1.
    """
    if sigma <= 1.0:
        raise ValueError("threshold defined for negative-tailed kernels only")
    a, b = _robustness_coefficients(sigma)
    c = 2.0 - 1.0 / math.sqrt(2.0)
    return (-a + math.sqrt(a * a + c * b)) / b


def model_params(n: int) -> tuple[float, float]:
    """Practical (alpha, sigma) choice as a function of the sample size.

    Polynomial model in log10(n), valid for 100 <= n <= 500000; outside
    that range a ValueError is raised carrying the endpoint values so the
    caller can decide whether clamping is acceptable.
    """
    if not MODEL_N_MIN <= n <= MODEL_N_MAX:
        edge = MODEL_N_MIN if n < MODEL_N_MIN else MODEL_N_MAX
        alpha, sigma = model_params(edge)
        raise ValueError(
            f"model defined for {MODEL_N_MIN} <= n <= {MODEL_N_MAX}; "
            f"nearest endpoint n={edge} gives alpha={alpha:.6g}, "
            f"sigma={sigma:.6g}"
        )
    x = math.log10(n)
    alpha = 10.0 ** (3.390 - 1.093 * x + 0.025 * x**3 - 0.00004 * x**6)
    sigma = 10.0 ** (-0.58 + 0.386 * x - 0.012 * x**2)
    return alpha, sigma


def model_kernel(n: int) -> SelectionKernel:
    return SelectionKernel(*model_params(n))
