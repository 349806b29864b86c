"""Low-level kernels for symmetric tridiagonal matrices with constant off-diagonal.

Sturm-sequence bisection for the smallest eigenvalues and a Thomas solve for
shifted systems.  The Thomas routine assumes a positive-definite matrix with
negative off-diagonal (a Stieltjes matrix): every elimination and
back-substitution step then only adds positive quantities, so a positive
right-hand side yields a strictly positive solution.  Inverse iteration for
nodeless ground states relies on that structural guarantee.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def sturm_count(diag: np.ndarray, off_sq: np.ndarray, shift: float, pivmin: float) -> int:
    """Number of eigenvalues below ``shift`` (LDLᵀ inertia count).

    Pivots at or below pivmin count as negative and are clamped to -pivmin,
    so exactly-vanishing pivots (shift hitting a leading-submatrix
    eigenvalue) neither stall nor skew the sequence.
    """
    count = 0
    q = diag[0] - shift
    if q <= pivmin:
        count += 1
        if q > -pivmin:
            q = -pivmin
    for i in range(1, diag.shape[0]):
        q = diag[i] - shift - off_sq[i - 1] / q
        if q <= pivmin:
            count += 1
            if q > -pivmin:
                q = -pivmin
    return count


def smallest_eigenvalues(diag: np.ndarray, off: float, k: int, tol: float = 1e-10) -> np.ndarray:
    """k smallest eigenvalues, ascending, by per-index bisection to ``tol`` (absolute).

    Deterministic: pure bisection on Gershgorin bounds, no iterative solver state.
    """
    m = diag.shape[0]
    if not 1 <= k <= m:
        raise ValueError(f"k={k} out of range [1, {m}]")
    off_sq = np.full(m - 1, off * off)
    pivmin = max(off * off, 1.0) * 1e-30
    radius = np.zeros(m)
    radius[:-1] += abs(off)
    radius[1:] += abs(off)
    lower = float(np.min(diag - radius))
    upper = float(np.max(diag + radius))
    out = np.empty(k)
    for j in range(1, k + 1):
        lo, hi = lower, upper
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if sturm_count(diag, off_sq, mid, pivmin) >= j:
                hi = mid
            else:
                lo = mid
        out[j - 1] = 0.5 * (lo + hi)
    return out


@njit(cache=True)
def solve_shifted(diag: np.ndarray, off: float, rhs: np.ndarray) -> np.ndarray:
    """Solve (tridiag(off, diag, off)) x = rhs by the Thomas algorithm.

    Requires a positive-definite matrix (all pivots positive); with off < 0
    and rhs > 0 the result is strictly positive.
    """
    m = diag.shape[0]
    c_prime = np.empty(m - 1)
    d_prime = np.empty(m)
    piv = diag[0]
    c_prime[0] = off / piv
    d_prime[0] = rhs[0] / piv
    for i in range(1, m - 1):
        piv = diag[i] - off * c_prime[i - 1]
        c_prime[i] = off / piv
        d_prime[i] = (rhs[i] - off * d_prime[i - 1]) / piv
    piv = diag[m - 1] - off * c_prime[m - 2]
    d_prime[m - 1] = (rhs[m - 1] - off * d_prime[m - 2]) / piv
    x = np.empty(m)
    x[m - 1] = d_prime[m - 1]
    for i in range(m - 2, -1, -1):
        x[i] = d_prime[i] - c_prime[i] * x[i + 1]
    return x
