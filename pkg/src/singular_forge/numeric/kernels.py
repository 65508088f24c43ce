"""Taylor-series kernels for transporting dY/dz = N(z)/d(z) Y.

Each kernel has a loop version (compiled with numba when enabled) and a
vectorized numpy version; `BACKEND` names the one bound to the public names.
"""

import numpy as np

from ._jit import USE_NUMBA, njit


def _taylor_shift_loops(c, z0, h):
    # c: (n, m) coefficients, lowest degree first, one column per polynomial
    n, m = c.shape
    out = c.copy()
    for col in range(m):
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j, col] = out[j, col] + z0 * out[j + 1, col]
    scale = 1.0 + 0.0j
    for j in range(n):
        for col in range(m):
            out[j, col] = out[j, col] * scale
        scale = scale * h
    return out


def _taylor_step_loops(Nt, dt, kmax, tol):
    # Nt: (K, p, p) scaled numerator coefficients (already multiplied by h), dt: (L,)
    K, p, _ = Nt.shape
    L = dt.shape[0]
    Y = np.zeros((kmax + 2, p, p), dtype=np.complex128)
    for i in range(p):
        Y[0, i, i] = 1.0
    total = Y[0].copy()
    inv0 = 1.0 / dt[0]
    small = 0
    for k in range(kmax + 1):
        nxt = np.zeros((p, p), dtype=np.complex128)
        for j in range(min(k, K - 1) + 1):
            A = Nt[j]
            B = Y[k - j]
            for a in range(p):
                for b in range(p):
                    s = 0.0j
                    for c in range(p):
                        s += A[a, c] * B[c, b]
                    nxt[a, b] += s
        for j in range(1, min(k + 1, L - 1) + 1):
            coef = dt[j] * (k + 1 - j)
            for a in range(p):
                for b in range(p):
                    nxt[a, b] -= coef * Y[k + 1 - j, a, b]
        f = inv0 / (k + 1)
        norm = 0.0
        tnorm = 0.0
        for a in range(p):
            for b in range(p):
                nxt[a, b] *= f
                Y[k + 1, a, b] = nxt[a, b]
                total[a, b] += nxt[a, b]
                norm = max(norm, abs(nxt[a, b]))
                tnorm = max(tnorm, abs(total[a, b]))
        if norm <= tol * max(1.0, tnorm):
            small += 1
            if small >= 3:
                return total, k + 1, True
        else:
            small = 0
    return total, kmax + 1, False


def _taylor_shift_numpy(c, z0, h):
    n = c.shape[0]
    out = c.copy()
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + z0 * out[j + 1]
    return out * (h ** np.arange(n))[:, None]


def _taylor_step_numpy(Nt, dt, kmax, tol):
    K, p, _ = Nt.shape
    L = dt.shape[0]
    Y = np.zeros((kmax + 2, p, p), dtype=np.complex128)
    Y[0] = np.eye(p)
    total = Y[0].copy()
    small = 0
    for k in range(kmax + 1):
        jn = min(k, K - 1) + 1
        nxt = np.einsum("jac,jcb->ab", Nt[:jn], Y[k::-1][:jn])
        jd = min(k + 1, L - 1)
        if jd >= 1:
            coef = dt[1:jd + 1] * (k + 1 - np.arange(1, jd + 1))
            nxt = nxt - np.einsum("j,jab->ab", coef, Y[k:k - jd:-1] if k - jd >= 0 else Y[k::-1][:jd])
        nxt = nxt / (dt[0] * (k + 1))
        Y[k + 1] = nxt
        total = total + nxt
        if np.abs(nxt).max() <= tol * max(1.0, np.abs(total).max()):
            small += 1
            if small >= 3:
                return total, k + 1, True
        else:
            small = 0
    return total, kmax + 1, False


taylor_shift_loops = njit(_taylor_shift_loops)
taylor_step_loops = njit(_taylor_step_loops)

if USE_NUMBA:
    BACKEND = "numba"
    taylor_shift = taylor_shift_loops
    taylor_step = taylor_step_loops
else:
    BACKEND = "numpy"
    taylor_shift = _taylor_shift_numpy
    taylor_step = _taylor_step_numpy
