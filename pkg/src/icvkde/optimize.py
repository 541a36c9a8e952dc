"""Grid-scan plus golden-section one-dimensional minimization helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0  # 1/golden ratio


@dataclass
class ScanResult:
    """Outcome of a grid scan with local refinement."""

    x: float
    fx: float
    boundary_hit: bool
    decreasing_to_lower: bool  # criterion kept falling toward the low end
    grid: np.ndarray
    values: np.ndarray


def golden_section(f, lo: float, hi: float, rel_tol: float = 1e-6) -> tuple[float, float]:
    """Minimize a unimodal function on [lo, hi] by golden-section search."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    mid = 0.5 * (a + b)
    while (b - a) > rel_tol * max(abs(mid), 1e-300):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        mid = 0.5 * (a + b)
    return (c, fc) if fc < fd else (d, fd)


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def interior_minima(values: np.ndarray) -> list[int]:
    """Indices of strict interior local minima of a sampled curve."""
    v = np.asarray(values)
    idx = [
        i for i in range(1, v.size - 1)
        if v[i] < v[i - 1] and v[i] < v[i + 1]
    ]
    return idx


def _refine(f, grid: np.ndarray, i: int, rel_tol: float) -> tuple[float, float]:
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid.size - 1)]
    return golden_section(f, lo, hi, rel_tol)


def scan_minimize(f, lo: float, hi: float, n_grid: int = 200,
                  rel_tol: float = 1e-6, smallest_local: bool = False) -> ScanResult:
    """Scan a log-spaced grid, then refine a minimum by golden section.

    The default policy refines the global grid minimum.  When it lies on
    the lower boundary (the curve dives as x decreases) the smallest
    interior local minimum is refined instead, if one exists; otherwise
    the boundary value is returned with ``boundary_hit`` set.  With
    ``smallest_local`` the smallest-x interior local minimum is always
    preferred.
    """
    grid = log_grid(lo, hi, n_grid)
    values = np.array([f(x) for x in grid])
    locals_ = interior_minima(values)
    best = int(np.argmin(values))
    decreasing = best == 0

    if smallest_local and locals_:
        pick = locals_[0]
    elif decreasing and locals_:
        pick = locals_[0]
    elif best in (0, n_grid - 1):
        return ScanResult(float(grid[best]), float(values[best]), True,
                          decreasing, grid, values)
    else:
        pick = best

    x, fx = _refine(f, grid, pick, rel_tol)
    # golden section can only improve on the grid point it brackets
    if values[pick] < fx:
        x, fx = float(grid[pick]), float(values[pick])
    return ScanResult(x, fx, False, decreasing, grid, values)
