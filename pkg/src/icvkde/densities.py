"""Normal-mixture target densities and their exact derivative functionals."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mixtures import SignedGaussianMixture

_SQRT2PI = math.sqrt(2.0 * math.pi)

# probabilists' Hermite polynomials He_0 .. He_6, highest degree first
_HERMITE = {
    0: (1.0,),
    1: (1.0, 0.0),
    2: (1.0, 0.0, -1.0),
    3: (1.0, 0.0, -3.0, 0.0),
    4: (1.0, 0.0, -6.0, 0.0, 3.0),
    5: (1.0, 0.0, -10.0, 0.0, 15.0, 0.0),
    6: (1.0, 0.0, -15.0, 0.0, 45.0, 0.0, -15.0),
}

_WEIGHT_TOL = 1e-12


def _phi_deriv(order: int, x: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """order-th derivative of the scale-s normal density at x."""
    u = x / scale
    he = np.polyval(_HERMITE[order], u)
    sign = -1.0 if order % 2 else 1.0
    return sign * he * np.exp(-0.5 * u * u) / (_SQRT2PI * scale ** (order + 1))


@dataclass(frozen=True)
class DensityFunctionals:
    """Roughness functionals R(f), R(f''), R(f''') of a target density."""

    r_f: float
    r_f2: float
    r_f3: float


@dataclass(frozen=True)
class NormalMixture:
    """Nonnegative-weight Gaussian mixture density."""

    weights: np.ndarray
    means: np.ndarray
    sds: np.ndarray

    def __post_init__(self):
        for name in ("weights", "means", "sds"):
            arr = np.atleast_1d(np.asarray(getattr(self, name), dtype=float)).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        if not (self.weights.size == self.means.size == self.sds.size):
            raise ValueError("weights, means and sds must have equal length")
        if np.any(self.weights <= 0.0) or np.any(self.sds <= 0.0):
            raise ValueError("weights and sds must be strictly positive")
        if abs(self.weights.sum() - 1.0) > _WEIGHT_TOL:
            raise ValueError("weights must sum to 1")

    def __call__(self, x):
        return self.to_mixture().evaluate(x)

    def to_mixture(self) -> SignedGaussianMixture:
        return SignedGaussianMixture(self.weights, self.means, self.sds)

    def mean(self) -> float:
        return float(np.sum(self.weights * self.means))

    def sd(self) -> float:
        """Overall standard deviation of the mixture."""
        m = self.mean()
        var = np.sum(self.weights * (self.sds**2 + self.means**2)) - m * m
        return float(math.sqrt(var))

    def scaled(self, c: float) -> "NormalMixture":
        """The density of c*X for X distributed as this mixture."""
        if c <= 0.0:
            raise ValueError("scale factor must be positive")
        return NormalMixture(self.weights, c * self.means, c * self.sds)

    def sample(self, n: int, seed: int) -> np.ndarray:
        """Draw n points; deterministic given the seed."""
        if n < 1:
            raise ValueError("need n >= 1")
        rng = np.random.default_rng(seed)
        idx = rng.choice(self.weights.size, size=n, p=self.weights)
        return rng.normal(self.means[idx], self.sds[idx])

    def derivative_functionals(self) -> DensityFunctionals:
        """Exact R(f), R(f''), R(f''') via Gaussian derivative identities.

        Repeated integration by parts gives
        R(f^(k)) = (-1)^k sum_ij w_i w_j phi^(2k)_{sqrt(s_i^2+s_j^2)}(m_i - m_j).
        """
        d = np.subtract.outer(self.means, self.means)
        s = np.sqrt(np.add.outer(self.sds**2, self.sds**2))
        out = []
        for k in (0, 2, 3):
            vals = _phi_deriv(2 * k, d, s)
            sign = -1.0 if k % 2 else 1.0
            out.append(sign * float(np.einsum("i,ij,j->", self.weights, vals, self.weights)))
        return DensityFunctionals(*out)


def standard_suite() -> dict[str, NormalMixture]:
    """The test densities used throughout: five classical normal mixtures
    plus the kurtotic unimodal."""
    return {
        "gaussian": NormalMixture([1.0], [0.0], [1.0]),
        "skewed_unimodal": NormalMixture(
            [1 / 5, 1 / 5, 3 / 5], [0.0, 1 / 2, 13 / 12], [1.0, 2 / 3, 5 / 9]
        ),
        "bimodal": NormalMixture([1 / 2, 1 / 2], [-1.0, 1.0], [2 / 3, 2 / 3]),
        "separated_bimodal": NormalMixture(
            [1 / 2, 1 / 2], [-3 / 2, 3 / 2], [1 / 2, 1 / 2]
        ),
        "skewed_bimodal": NormalMixture([3 / 4, 1 / 4], [0.0, 3 / 2], [1.0, 1 / 3]),
        "kurtotic_unimodal": NormalMixture([2 / 3, 1 / 3], [0.0, 0.0], [1.0, 1 / 10]),
    }
