"""Pure-numpy implementations of the hot kernels.

Summation order matches the compiled kernels exactly (k ascending, the
``b = 0`` term before ``b = 1``), so both backends return identical bits.
"""

import numpy as np


def loglik_scan(counts, log_p0, log_p1):
    counts = np.ascontiguousarray(counts, dtype=np.int64)
    n = counts.shape[0]
    cand = np.arange(n, dtype=np.int64)
    total = np.zeros(n, dtype=np.float64)
    for k in range(n):
        c0, c1 = counts[k]
        if c0 == 0 and c1 == 0:
            continue
        r = (cand * k) % n
        if c0:
            total += c0 * log_p0[r]
        if c1:
            total += c1 * log_p1[r]
    return total


def inverse_cdf(cdf, u):
    cdf = np.ascontiguousarray(cdf, dtype=np.float64)
    out = np.searchsorted(cdf, u, side="right")
    return np.minimum(out, len(cdf) - 1).astype(np.int64)
