"""Hot numeric kernels: numba-compiled with a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable CIRCJOIN_NO_NUMBA is unset/false; otherwise the numpy
implementations are bound to the public names.  Both paths follow the
same summation order so results agree to the last few ulps.

Public names: circulant_eigenvalues, kuramoto_rhs, rk4_trajectory,
plus the *_numpy / *_numba variants for benchmarking.
"""

import os

import numpy as np


def numba_disabled_by_env():
    flag = os.environ.get("CIRCJOIN_NO_NUMBA", "").strip().lower()
    return flag in ("1", "true", "yes", "on")


# ---------------------------------------------------------------------------
# numpy implementations (always available)
# ---------------------------------------------------------------------------

def circulant_eigenvalues_numpy(c, powers):
    """Eigenvalues of Circ(c) for j = 0..k-1, summed as
    c[0] + c[k-1]*w^j + c[k-2]*w^2j + ... with w-powers taken from the
    precomputed table `powers` indexed mod k."""
    k = c.shape[0]
    lam = np.full(k, c[0], dtype=np.complex128)
    j = np.arange(k)
    for m in range(1, k):
        lam += c[k - m] * powers[(m * j) % k]
    return lam


def kuramoto_rhs_numpy(theta, adj, omega, eps):
    """omega_i + eps * sum_l adj[i,l] * sin(theta_l - theta_i)."""
    diff = theta[None, :] - theta[:, None]
    return omega + eps * (adj * np.sin(diff)).sum(axis=1)


def rk4_trajectory_numpy(theta0, adj, omega, eps, dt, steps):
    """Classical fixed-step RK4; returns (trajectory, bad_step).

    trajectory has steps+1 rows of unreduced phases; bad_step is the
    1-based step at which the state first became non-finite, or -1.
    """
    n = theta0.shape[0]
    out = np.empty((steps + 1, n))
    out[0] = theta0
    th = theta0.copy()
    # overflow/invalid are expected on divergence and reported via bad_step
    with np.errstate(over="ignore", invalid="ignore"):
        for s in range(steps):
            k1 = kuramoto_rhs_numpy(th, adj, omega, eps)
            k2 = kuramoto_rhs_numpy(th + 0.5 * dt * k1, adj, omega, eps)
            k3 = kuramoto_rhs_numpy(th + 0.5 * dt * k2, adj, omega, eps)
            k4 = kuramoto_rhs_numpy(th + dt * k3, adj, omega, eps)
            th = th + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.isfinite(th).all():
                return out, s + 1
            out[s + 1] = th
    return out, -1


# ---------------------------------------------------------------------------
# numba implementations (compiled when numba is importable)
# ---------------------------------------------------------------------------

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

if HAVE_NUMBA:

    @njit(cache=True)
    def circulant_eigenvalues_numba(c, powers):
        k = c.shape[0]
        lam = np.empty(k, np.complex128)
        for j in range(k):
            acc = c[0]
            for m in range(1, k):
                acc = acc + c[k - m] * powers[(m * j) % k]
            lam[j] = acc
        return lam

    @njit(cache=True)
    def kuramoto_rhs_numba(theta, adj, omega, eps):
        n = theta.shape[0]
        out = np.empty(n)
        for i in range(n):
            acc = 0.0
            ti = theta[i]
            for l in range(n):
                a = adj[i, l]
                if a != 0.0:
                    acc += a * np.sin(theta[l] - ti)
            out[i] = omega[i] + eps * acc
        return out

    @njit(cache=True)
    def rk4_trajectory_numba(theta0, adj, omega, eps, dt, steps):
        n = theta0.shape[0]
        out = np.empty((steps + 1, n))
        out[0] = theta0
        th = theta0.copy()
        for s in range(steps):
            k1 = kuramoto_rhs_numba(th, adj, omega, eps)
            k2 = kuramoto_rhs_numba(th + 0.5 * dt * k1, adj, omega, eps)
            k3 = kuramoto_rhs_numba(th + 0.5 * dt * k2, adj, omega, eps)
            k4 = kuramoto_rhs_numba(th + dt * k3, adj, omega, eps)
            th = th + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            ok = True
            for i in range(n):
                if not np.isfinite(th[i]):
                    ok = False
            if not ok:
                return out, s + 1
            out[s + 1] = th
        return out, -1


USING_NUMBA = HAVE_NUMBA and not numba_disabled_by_env()

if USING_NUMBA:
    circulant_eigenvalues = circulant_eigenvalues_numba
    kuramoto_rhs = kuramoto_rhs_numba
    rk4_trajectory = rk4_trajectory_numba
else:
    circulant_eigenvalues = circulant_eigenvalues_numpy
    kuramoto_rhs = kuramoto_rhs_numpy
    rk4_trajectory = rk4_trajectory_numpy
