"""Locally selected bandwidths via windowed cross-validation.

At each grid point x, a Gaussian window of width w localizes the
cross-validation criterion; the per-point selection-kernel bandwidth is
rescaled by C and interpolated across x with a natural cubic spline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from . import _fastsum
from .densities import NormalMixture
from .kernels import SelectionKernel, gaussian_kernel
from .mixtures import SignedGaussianMixture
from .optimize import golden_section, interior_minima, log_grid

_SQRT2PI = math.sqrt(2.0 * math.pi)

DEFAULT_GRID = np.round(np.arange(-30, 31) * 0.1, 10)

B_SEARCH_LO = 1e-3
B_SEARCH_HI = 10.0
REFINE_REL_TOL = 1e-6


def local_icv_criterion(data, kernel: SignedGaussianMixture, x: float,
                        w: float, b: float) -> float:
    """Windowed cross-validation criterion at location x and bandwidth b."""
    data = np.asarray(data, dtype=float)
    if data.size < 2:
        raise ValueError("need at least 2 observations")
    if w <= 0.0 or b <= 0.0:
        raise ValueError("window and bandwidth must be positive")
    if not kernel.is_centered():
        raise ValueError("local criterion implemented for centered kernels")
    return float(
        _fastsum.local_icv_value(data, x, w, b,
                                 np.ascontiguousarray(kernel.weights),
                                 np.ascontiguousarray(kernel.scales))
    )


def smallest_local_minimizer(curve, b_range: tuple[float, float],
                             grid_points: int = 50) -> tuple[float, bool]:
    """Smallest-b interior local minimizer of a criterion curve.

    Returns ``(b, boundary)``; ``boundary`` is set when no interior local
    minimum exists and the best grid value is returned instead.
    """
    lo, hi = b_range
    if lo <= 0.0:
        raise ValueError("lower bandwidth bound must be positive")
    if grid_points < 50:
        raise ValueError("need at least 50 grid points")
    grid = log_grid(lo, hi, grid_points)
    values = np.array([curve(b) for b in grid])
    locals_ = interior_minima(values)
    if not locals_:
        return float(grid[int(np.argmin(values))]), True
    i = locals_[0]
    b, fb = golden_section(curve, grid[i - 1], grid[i + 1], REFINE_REL_TOL)
    if values[i] < fb:
        b = float(grid[i])
    return b, False


@dataclass(frozen=True)
class LocalBandwidthFunction:
    """Per-point bandwidths on a grid with a natural-spline interpolant."""

    grid: np.ndarray
    bandwidths: np.ndarray
    window: float
    floored: bool = False          # interpolant went non-positive somewhere
    spline: CubicSpline = field(repr=False, compare=False, default=None)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < self.grid[0]) or np.any(x > self.grid[-1]):
            raise ValueError("outside local-bandwidth domain")
        h = self.spline(x)
        h = np.where(h > 0.0, h, self.bandwidths.min())
        return float(h) if h.ndim == 0 else h


def _fit(grid, bandwidths, w) -> LocalBandwidthFunction:
    grid = np.asarray(grid, dtype=float)
    bandwidths = np.asarray(bandwidths, dtype=float)
    spline = CubicSpline(grid, bandwidths, bc_type="natural")
    floored = bool(np.any(spline(np.linspace(grid[0], grid[-1], 20 * grid.size)) <= 0.0))
    return LocalBandwidthFunction(grid, bandwidths, float(w), floored, spline)


def local_bandwidths(data, method: str = "icv", alpha: float | None = None,
                     sigma: float | None = None, w: float = 0.3,
                     grid=DEFAULT_GRID, grid_points: int = 50) -> LocalBandwidthFunction:
    """Select a bandwidth at every grid point by windowed cross-validation.

    ``method="icv"`` uses the (alpha, sigma) selection kernel with the
    smallest-local-minimizer rule and rescales by C; ``method="lscv"``
    uses the Gaussian kernel with the global-minimum rule (C = 1).
    """
    data = np.asarray(data, dtype=float)
    if method == "icv":
        if alpha is None or sigma is None:
            raise ValueError("icv requires alpha and sigma")
        sel = SelectionKernel(alpha, sigma)
        kernel, c = sel.mixture, sel.rescale_constant()
        smallest = True
    elif method == "lscv":
        kernel, c = gaussian_kernel(), 1.0
        smallest = False
    else:
        raise ValueError(f"unknown method {method!r}")

    s = float(np.std(data, ddof=1))
    anchor = s * data.size ** (-0.2)
    b_range = (B_SEARCH_LO * anchor, B_SEARCH_HI * anchor)

    out = np.empty(len(grid))
    for i, x in enumerate(grid):
        curve = lambda b: local_icv_criterion(data, kernel, float(x), w, b)
        if smallest:
            b, _ = smallest_local_minimizer(curve, b_range, grid_points)
        else:
            vals_grid = log_grid(*b_range, grid_points)
            vals = np.array([curve(b) for b in vals_grid])
            j = int(np.argmin(vals))
            if 0 < j < grid_points - 1:
                b, fb = golden_section(curve, vals_grid[j - 1], vals_grid[j + 1],
                                       REFINE_REL_TOL)
                if vals[j] < fb:
                    b = float(vals_grid[j])
            else:
                b = float(vals_grid[j])
        out[i] = c * b
    return _fit(grid, out, w)


def local_estimate(data, lbf: LocalBandwidthFunction, x):
    """Gaussian KDE with the locally interpolated bandwidth h(x)."""
    data = np.asarray(data, dtype=float)
    h = lbf(x)
    x = np.asarray(x, dtype=float)
    u = (x[..., None] - data) / np.asarray(h)[..., None]
    out = np.exp(-0.5 * u * u).sum(axis=-1) / (data.size * np.asarray(h) * _SQRT2PI)
    return float(out) if np.ndim(x) == 0 else out


def average_squared_error(estimate, f: NormalMixture, grid=DEFAULT_GRID) -> float:
    """Mean of (estimate - f)^2 over the evaluation grid."""
    grid = np.asarray(grid, dtype=float)
    est = np.array([estimate(x) for x in grid])
    return float(np.mean((est - f(grid)) ** 2))
