"""Numba-compiled O(n^2) pairwise sums behind the cross-validation criteria.

Every Gaussian term with exponent beyond ``_TRUNC`` (argument < -60, i.e.
below 1e-26) is dropped; relative to double-precision accumulation over
millions of pairs this is beneath representable relevance, mirroring the
truncation rationale used by the quadrature oracles in the test suite.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

_SQRT2PI = math.sqrt(2.0 * math.pi)
_TRUNC = 60.0

_LOG2E = 1.4426950408889634
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10
_BLOCK = 4096


@njit(cache=True, fastmath=True)
def _expneg_prefix_sum(d2, t, n):
    """sum_{i<n} exp(-t * d2[i]) with a block-vectorized exponential.

    exp(x) = 2^k * p(r) with k = round(x log2 e) and p a Taylor polynomial
    on |r| <= ln(2)/2; 2^k is assembled from the IEEE-754 exponent bits.
    Caller guarantees t * d2[i] <= _TRUNC, so k never leaves [-87, 0] and
    the bit trick cannot denormalize.  Accurate to ~1e-13 relative.
    """
    kbits = np.empty(_BLOCK, dtype=np.int64)
    poly = np.empty(_BLOCK)
    total = 0.0
    i0 = 0
    while i0 < n:
        m = min(_BLOCK, n - i0)
        for i in range(m):
            x = -t * d2[i0 + i]
            kf = np.floor(x * _LOG2E + 0.5)
            r = (x - kf * _LN2_HI) - kf * _LN2_LO
            p = 1.0 + r * (1.0 + r * (0.5 + r * (1.0 / 6 + r * (
                1.0 / 24 + r * (1.0 / 120 + r * (1.0 / 720 + r * (
                    1.0 / 5040 + r * (1.0 / 40320 + r * (
                        1.0 / 362880 + r / 3628800)))))))))
            poly[i] = p
            kbits[i] = (np.int64(kf) + 1023) << 52
        scale = kbits[:m].view(np.float64)
        acc = 0.0
        for i in range(m):
            acc += poly[i] * scale[i]
        total += acc
        i0 += m
    return total


@njit(cache=True, fastmath=True)
def pair_sq_dists(x):
    """Squared differences (x_i - x_j)^2 over pairs i < j."""
    n = x.size
    out = np.empty(n * (n - 1) // 2)
    k = 0
    for i in range(n):
        xi = x[i]
        for j in range(i + 1, n):
            d = xi - x[j]
            out[k] = d * d
            k += 1
    return out


@njit(cache=True, fastmath=True)
def _expneg_prefix_sum_dual(d2, t, n, n2):
    """Sums of exp(-t*d2[i]) for i < n and exp(-2t*d2[i]) for i < n2 <= n,
    the doubled-rate terms obtained by squaring within the same pass."""
    kbits = np.empty(_BLOCK, dtype=np.int64)
    poly = np.empty(_BLOCK)
    total = 0.0
    total2 = 0.0
    i0 = 0
    while i0 < n:
        m = min(_BLOCK, n - i0)
        for i in range(m):
            x = -t * d2[i0 + i]
            kf = np.floor(x * _LOG2E + 0.5)
            r = (x - kf * _LN2_HI) - kf * _LN2_LO
            p = 1.0 + r * (1.0 + r * (0.5 + r * (1.0 / 6 + r * (
                1.0 / 24 + r * (1.0 / 120 + r * (1.0 / 720 + r * (
                    1.0 / 5040 + r * (1.0 / 40320 + r * (
                        1.0 / 362880 + r / 3628800)))))))))
            poly[i] = p
            kbits[i] = (np.int64(kf) + 1023) << 52
        scale = kbits[:m].view(np.float64)
        acc = 0.0
        for i in range(m):
            poly[i] = poly[i] * scale[i]
            acc += poly[i]
        total += acc
        m2 = min(max(n2 - i0, 0), m)
        acc2 = 0.0
        for i in range(m2):
            acc2 += poly[i] * poly[i]
        total2 += acc2
        i0 += m
    return total, total2


@njit(cache=True, fastmath=True)
def exp_sums(d2_sorted, tvals):
    """sum_{i<j} exp(-t * d2) for each t, truncated below 1e-26 per term."""
    out = np.zeros(tvals.size)
    for k in range(tvals.size):
        t = tvals[k]
        hi = np.searchsorted(d2_sorted, _TRUNC / t)
        out[k] = _expneg_prefix_sum(d2_sorted, t, hi)
    return out


@njit(cache=True, fastmath=True)
def exp_sums_paired(d2_sorted, tvals, halves):
    """exp_sums exploiting entries whose rate is exactly double another's.

    ``halves[k] = j`` marks t_k = 2 * t_j; entry k is then accumulated by
    squaring the scale-j exponentials in the same pass, replacing an
    exponential per pair with a multiply."""
    m = tvals.size
    out = np.zeros(m)
    doubled = np.full(m, -1, dtype=np.int64)
    for k in range(m):
        if halves[k] >= 0:
            doubled[halves[k]] = k
    for k in range(m):
        if halves[k] >= 0:
            continue
        t = tvals[k]
        hi = np.searchsorted(d2_sorted, _TRUNC / t)
        if doubled[k] >= 0:
            hi2 = np.searchsorted(d2_sorted, _TRUNC / tvals[doubled[k]])
            s, s2 = _expneg_prefix_sum_dual(d2_sorted, t, hi, hi2)
            out[k] = s
            out[doubled[k]] = s2
        else:
            out[k] = _expneg_prefix_sum(d2_sorted, t, hi)
    return out


@njit(cache=True, fastmath=True)
def local_icv_value(data, x, w, b, comp_w, comp_s):
    """Closed-form windowed cross-validation criterion at (x, b).

    First term: int phi_w(x-u) fhat_b(u)^2 du via triple-Gaussian product
    integrals.  Second term: 2/n * sum_i phi_w(x-X_i) * fhat_{b,-i}(X_i).
    """
    n = data.size
    nc = comp_w.size

    # leave-one-out term
    t2 = 0.0
    inv_w2 = 1.0 / (w * w)
    for i in range(n):
        loo = 0.0
        for c in range(nc):
            a = b * comp_s[c]
            coef = comp_w[c] / (_SQRT2PI * a)
            inv2a2 = 0.5 / (a * a)
            for j in range(n):
                if j == i:
                    continue
                d = data[i] - data[j]
                arg = d * d * inv2a2
                if arg < _TRUNC:
                    loo += coef * np.exp(-arg)
        dq = x - data[i]
        pw = np.exp(-0.5 * dq * dq * inv_w2) / (_SQRT2PI * w)
        t2 += pw * loo
    t2 *= 2.0 / (n * (n - 1))

    # squared-estimate term
    t1 = 0.0
    for c in range(nc):
        for cp in range(nc):
            a2 = (b * comp_s[c]) ** 2
            ap2 = (b * comp_s[cp]) ** 2
            tot = a2 + ap2
            big = math.sqrt(tot)                  # scale of phi(X_i - X_j)
            outsc = math.sqrt(w * w + a2 * ap2 / tot)
            lam = ap2 / tot                       # product-mean weight on X_i
            coef = comp_w[c] * comp_w[cp] / (2.0 * math.pi * big * outsc)
            inv2b2 = 0.5 / (big * big)
            inv2o2 = 0.5 / (outsc * outsc)
            for i in range(n):
                xi = data[i]
                for j in range(n):
                    d = xi - data[j]
                    mu = lam * xi + (1.0 - lam) * data[j]
                    arg = d * d * inv2b2 + (x - mu) * (x - mu) * inv2o2
                    if arg < _TRUNC:
                        t1 += coef * np.exp(-arg)
    t1 /= n * n

    return t1 - t2
