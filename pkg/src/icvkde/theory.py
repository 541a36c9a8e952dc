"""Asymptotic accuracy of the ICV bandwidth: constants, optimal sigma,
optimal mean squared error, and first-order bandwidth approximations.

The relative error of the ICV bandwidth decomposes into a standard
deviation term S_n and a positive bias term B_n; minimizing
S_n^2 + B_n^2 over sigma yields the n^(-1/4) relative-error rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .densities import DensityFunctionals
from .kernels import R_PHI, SelectionKernel
from .optimize import scan_minimize

_SQRTPI = math.sqrt(math.pi)
_SQRT2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class TheoryConstants:
    a_alpha: float
    c_alpha: float
    d_alpha: float


@dataclass(frozen=True)
class AsymptoticMSE:
    s_n: float        # relative-error standard deviation term
    b_n_bias: float   # relative-error bias term (positive)

    @property
    def mse(self) -> float:
        return self.s_n**2 + self.b_n_bias**2


def theory_constants(alpha: float) -> TheoryConstants:
    """The alpha-dependent constants entering S_n and B_n."""
    if alpha <= 0.0:
        raise ValueError("theory constants defined for alpha > 0")
    ap1 = 1.0 + alpha
    a = (3.0 / _SQRT2PI) * ap1**2 * (
        0.125 * ap1**2 - (8.0 / (9.0 * math.sqrt(3.0))) * ap1 + 1.0 / math.sqrt(2.0)
    )
    c = math.sqrt(2.0 * a) * (2.0 * _SQRTPI) ** 0.9 / (
        5.0 * ap1**1.8 * alpha**0.2
    )
    d = 0.15 * (ap1**2 / (2.0 * alpha**2 * _SQRTPI)) ** 0.4
    return TheoryConstants(a, c, d)


def cd_product(alpha: float) -> float:
    const = theory_constants(alpha)
    return const.c_alpha * const.d_alpha


def optimal_alpha(rel_tol: float = 1e-6) -> float:
    """Minimizer of C_alpha * D_alpha, the density-free part of the MSE."""
    res = scan_minimize(cd_product, 1e-3, 1e3, 400, rel_tol)
    if res.boundary_hit:
        raise RuntimeError("optimal alpha at search boundary")
    return res.x


def relative_error_terms(alpha: float, sigma: float, n: int,
                         fun: DensityFunctionals) -> AsymptoticMSE:
    """S_n and B_n of the relative bandwidth error, for given (alpha, sigma)."""
    if sigma <= 0.0 or n < 1:
        raise ValueError("sigma and n must be positive")
    const = theory_constants(alpha)
    s_n = (
        sigma ** (-0.4) * n ** (-0.1)
        * math.sqrt(fun.r_f) * fun.r_f2 ** (-0.1) * const.c_alpha
    )
    b_n = (sigma / n) ** 0.4 * fun.r_f3 / fun.r_f2**1.4 * const.d_alpha
    return AsymptoticMSE(s_n, b_n)


def sigma_opt(alpha: float, n: int, fun: DensityFunctionals) -> float:
    """The sigma minimizing S_n^2 + B_n^2; grows like n^(3/8) and is free
    of the target's location and scale."""
    const = theory_constants(alpha)
    return (
        n**0.375
        * (const.c_alpha / const.d_alpha) ** 1.25
        * (fun.r_f * fun.r_f2**2.6 / fun.r_f3**2) ** 0.625
    )


def mse_opt(alpha: float, n: int, fun: DensityFunctionals) -> float:
    """Minimum of S_n^2 + B_n^2 over sigma; decays like n^(-1/2).

    At the optimum the variance and squared-bias terms balance, each
    contributing sqrt(S^2 B^2), hence the leading factor 2.
    """
    const = theory_constants(alpha)
    return (
        2.0 * n**-0.5 * const.c_alpha * const.d_alpha
        * fun.r_f3 * math.sqrt(fun.r_f) / fun.r_f2**1.5
    )


def asymptotic_bandwidths(kernel: SelectionKernel, n: int,
                          fun: DensityFunctionals) -> tuple[float, float]:
    """First-order MISE-optimal bandwidths (b_n, h_n) for the selection
    and Gaussian kernels; they satisfy h_n = C * b_n exactly."""
    mu2 = kernel.second_moment()
    b_n = (kernel.roughness() / (mu2 * mu2 * fun.r_f2)) ** 0.2 * n ** (-0.2)
    h_n = (R_PHI / fun.r_f2) ** 0.2 * n ** (-0.2)
    return b_n, h_n
