"""Double-double complex Taylor kernels (about 32 significant digits).

A complex double-double number is four float64 values along the last axis:
(re_hi, re_lo, im_hi, im_lo).  Scalar loop kernels are compiled with numba
when enabled; the vectorized numpy versions are the fallback.
"""

import numpy as np

from ._jit import USE_NUMBA, njit

_SPLIT = 134217729.0  # 2**27 + 1


# scalar primitives (numba targets)

@njit
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit
def _two_prod(a, b):
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit
def _add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    t, f = _two_sum(al, bl)
    e += t
    u = s + e
    e = e - (u - s)
    e += f
    v = u + e
    return v, e - (v - u)


@njit
def _mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    s = p + e
    return s, e - (s - p)


@njit
def _div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _mul(q1, 0.0, bh, bl)
    rh, rl = _add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _mul(q2, 0.0, bh, bl)
    rh, rl = _add(rh, rl, -ph, -pl)
    q3 = rh / bh
    s, e = _two_sum(q1, q2)
    return _add(s, e, q3, 0.0)


@njit
def _cmul(x0, x1, x2, x3, y0, y1, y2, y3):
    a0, a1 = _mul(x0, x1, y0, y1)
    b0, b1 = _mul(x2, x3, y2, y3)
    r0, r1 = _add(a0, a1, -b0, -b1)
    a0, a1 = _mul(x0, x1, y2, y3)
    b0, b1 = _mul(x2, x3, y0, y1)
    i0, i1 = _add(a0, a1, b0, b1)
    return r0, r1, i0, i1


@njit
def _cinv(x0, x1, x2, x3):
    a0, a1 = _mul(x0, x1, x0, x1)
    b0, b1 = _mul(x2, x3, x2, x3)
    n0, n1 = _add(a0, a1, b0, b1)
    r0, r1 = _div(x0, x1, n0, n1)
    i0, i1 = _div(-x2, -x3, n0, n1)
    return r0, r1, i0, i1


@njit
def _cacc(out, idx0, idx1, x0, x1, x2, x3):
    r0, r1 = _add(out[idx0, idx1, 0], out[idx0, idx1, 1], x0, x1)
    i0, i1 = _add(out[idx0, idx1, 2], out[idx0, idx1, 3], x2, x3)
    out[idx0, idx1, 0] = r0
    out[idx0, idx1, 1] = r1
    out[idx0, idx1, 2] = i0
    out[idx0, idx1, 3] = i1


def _dd_taylor_shift_loops(c, z0, h):
    # c: (n, m, 4); returns coefficients of f(z0 + h t) in t
    n, m, _ = c.shape
    out = c.copy()
    for col in range(m):
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                x = out[j + 1, col]
                r0, r1, i0, i1 = _cmul(z0[0], z0[1], z0[2], z0[3], x[0], x[1], x[2], x[3])
                _cacc(out, j, col, r0, r1, i0, i1)
    s0, s1, s2, s3 = 1.0, 0.0, 0.0, 0.0
    for j in range(n):
        for col in range(m):
            x = out[j, col]
            r0, r1, i0, i1 = _cmul(s0, s1, s2, s3, x[0], x[1], x[2], x[3])
            out[j, col, 0] = r0
            out[j, col, 1] = r1
            out[j, col, 2] = i0
            out[j, col, 3] = i1
        s0, s1, s2, s3 = _cmul(s0, s1, s2, s3, h[0], h[1], h[2], h[3])
    return out


def _dd_taylor_step_loops(Nt, dt, kmax, tol):
    # Nt: (K, p, p, 4) already scaled by h; dt: (L, 4)
    K, p = Nt.shape[0], Nt.shape[1]
    L = dt.shape[0]
    Y = np.zeros((kmax + 2, p, p, 4))
    total = np.zeros((p, p, 4))
    for i in range(p):
        Y[0, i, i, 0] = 1.0
        total[i, i, 0] = 1.0
    v0, v1, v2, v3 = _cinv(dt[0, 0], dt[0, 1], dt[0, 2], dt[0, 3])
    small = 0
    nxt = np.zeros((p, p, 4))
    for k in range(kmax + 1):
        nxt[:] = 0.0
        for j in range(min(k, K - 1) + 1):
            for a in range(p):
                for b in range(p):
                    for c in range(p):
                        x = Nt[j, a, c]
                        y = Y[k - j, c, b]
                        r0, r1, i0, i1 = _cmul(x[0], x[1], x[2], x[3], y[0], y[1], y[2], y[3])
                        _cacc(nxt, a, b, r0, r1, i0, i1)
        for j in range(1, min(k + 1, L - 1) + 1):
            w = float(k + 1 - j)
            c0, c1 = _mul(dt[j, 0], dt[j, 1], w, 0.0)
            c2, c3 = _mul(dt[j, 2], dt[j, 3], w, 0.0)
            for a in range(p):
                for b in range(p):
                    y = Y[k + 1 - j, a, b]
                    r0, r1, i0, i1 = _cmul(c0, c1, c2, c3, y[0], y[1], y[2], y[3])
                    _cacc(nxt, a, b, -r0, -r1, -i0, -i1)
        f0, f1 = _div(1.0, 0.0, float(k + 1), 0.0)
        g0, g1, g2, g3 = _cmul(v0, v1, v2, v3, f0, f1, 0.0, 0.0)
        norm = 0.0
        tnorm = 0.0
        for a in range(p):
            for b in range(p):
                x = nxt[a, b]
                r0, r1, i0, i1 = _cmul(g0, g1, g2, g3, x[0], x[1], x[2], x[3])
                Y[k + 1, a, b, 0] = r0
                Y[k + 1, a, b, 1] = r1
                Y[k + 1, a, b, 2] = i0
                Y[k + 1, a, b, 3] = i1
                _cacc(total, a, b, r0, r1, i0, i1)
                norm = max(norm, abs(r0) + abs(i0))
                tnorm = max(tnorm, abs(total[a, b, 0]) + abs(total[a, b, 2]))
        if norm <= tol * max(1.0, tnorm):
            small += 1
            if small >= 3:
                return total, k + 1, True
        else:
            small = 0
    return total, kmax + 1, False


# vectorized numpy versions, elementwise on arrays of hi/lo parts

def _v_two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _v_two_prod(a, b):
    p = a * b
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _v_add(ah, al, bh, bl):
    s, e = _v_two_sum(ah, bh)
    t, f = _v_two_sum(al, bl)
    e = e + t
    u = s + e
    e = e - (u - s)
    e = e + f
    v = u + e
    return v, e - (v - u)


def _v_mul(ah, al, bh, bl):
    p, e = _v_two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    s = p + e
    return s, e - (s - p)


def dd_add(x, y):
    """Elementwise complex double-double sum of arrays shaped (..., 4)."""
    r = _v_add(x[..., 0], x[..., 1], y[..., 0], y[..., 1])
    i = _v_add(x[..., 2], x[..., 3], y[..., 2], y[..., 3])
    return np.stack(r + i, axis=-1)


def dd_mul(x, y):
    """Elementwise complex double-double product (broadcasting)."""
    x0, x1, x2, x3 = (x[..., k] for k in range(4))
    y0, y1, y2, y3 = (y[..., k] for k in range(4))
    a = _v_mul(x0, x1, y0, y1)
    b = _v_mul(x2, x3, y2, y3)
    re = _v_add(a[0], a[1], -b[0], -b[1])
    a = _v_mul(x0, x1, y2, y3)
    b = _v_mul(x2, x3, y0, y1)
    im = _v_add(a[0], a[1], b[0], b[1])
    return np.stack(re + im, axis=-1)


def dd_sum(x, axis):
    """Double-double sum along `axis` by pairwise halving."""
    x = np.moveaxis(x, axis, 0)
    while x.shape[0] > 1:
        if x.shape[0] % 2:
            x = np.concatenate([x, np.zeros((1,) + x.shape[1:])])
        x = dd_add(x[0::2], x[1::2])
    return x[0]


def dd_matmul(a, b):
    """(…, p, q, 4) @ (…, q, r, 4) in double-double."""
    prod = dd_mul(a[..., :, :, None, :], b[..., None, :, :, :])
    return dd_sum(prod, axis=-3)


def _dd_scalar(x0, x1, x2, x3):
    return np.array([x0, x1, x2, x3])


def _dd_taylor_shift_numpy(c, z0, h):
    n = c.shape[0]
    out = c.copy()
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = dd_add(out[j], dd_mul(z0, out[j + 1]))
    scale = _dd_scalar(1.0, 0.0, 0.0, 0.0)
    for j in range(n):
        out[j] = dd_mul(scale, out[j])
        scale = dd_mul(scale, h)
    return out


def _v_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _v_mul(q1, 0.0, bh, bl)
    rh, rl = _v_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _v_mul(q2, 0.0, bh, bl)
    rh, rl = _v_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    s, e = _v_two_sum(q1, q2)
    return _v_add(s, e, q3, 0.0)


def dd_inv(x):
    """Complex double-double reciprocal of a single value shaped (4,)."""
    a = _v_mul(x[0], x[1], x[0], x[1])
    b = _v_mul(x[2], x[3], x[2], x[3])
    n = _v_add(a[0], a[1], b[0], b[1])
    re = _v_div(x[0], x[1], n[0], n[1])
    im = _v_div(-x[2], -x[3], n[0], n[1])
    return _dd_scalar(re[0], re[1], im[0], im[1])


def _dd_taylor_step_numpy(Nt, dt, kmax, tol):
    K, p = Nt.shape[0], Nt.shape[1]
    L = dt.shape[0]
    Y = np.zeros((kmax + 2, p, p, 4))
    for i in range(p):
        Y[0, i, i, 0] = 1.0
    total = Y[0].copy()
    inv0 = dd_inv(dt[0])
    small = 0
    for k in range(kmax + 1):
        jn = min(k, K - 1) + 1
        terms = dd_matmul(Nt[:jn], Y[k::-1][:jn])
        nxt = dd_sum(terms, 0)
        jd = min(k + 1, L - 1)
        if jd >= 1:
            w = np.zeros((jd, 4))
            w[:, 0] = k + 1 - np.arange(1, jd + 1)
            coef = dd_mul(dt[1:jd + 1], w)
            prev = Y[k + 1 - np.arange(1, jd + 1)]
            corr = dd_sum(dd_mul(coef[:, None, None, :], prev), 0)
            nxt = dd_add(nxt, -corr)
        f = _v_div(1.0, 0.0, float(k + 1), 0.0)
        g = dd_mul(inv0, _dd_scalar(f[0], f[1], 0.0, 0.0))
        nxt = dd_mul(g, nxt)
        Y[k + 1] = nxt
        total = dd_add(total, nxt)
        norm = (np.abs(nxt[..., 0]) + np.abs(nxt[..., 2])).max()
        tnorm = (np.abs(total[..., 0]) + np.abs(total[..., 2])).max()
        if norm <= tol * max(1.0, tnorm):
            small += 1
            if small >= 3:
                return total, k + 1, True
        else:
            small = 0
    return total, kmax + 1, False


dd_taylor_shift_loops = njit(_dd_taylor_shift_loops)
dd_taylor_step_loops = njit(_dd_taylor_step_loops)

if USE_NUMBA:
    dd_taylor_shift = dd_taylor_shift_loops
    dd_taylor_step = dd_taylor_step_loops
else:
    dd_taylor_shift = _dd_taylor_shift_numpy
    dd_taylor_step = _dd_taylor_step_numpy


# conversions

def dd_from_complex(z) -> np.ndarray:
    z = complex(z)
    return _dd_scalar(z.real, 0.0, z.imag, 0.0)


def dd_from_fraction_pair(re, im) -> np.ndarray:
    """Exact rationals to the nearest double-double."""
    from fractions import Fraction

    out = []
    for x in (Fraction(re), Fraction(im)):
        hi = float(x)
        lo = float(x - Fraction(hi))
        out += [hi, lo]
    return np.array(out)


def dd_to_complex(x: np.ndarray) -> np.ndarray:
    return (x[..., 0] + x[..., 1]) + 1j * (x[..., 2] + x[..., 3])


def dd_identity(p: int) -> np.ndarray:
    out = np.zeros((p, p, 4))
    for i in range(p):
        out[i, i, 0] = 1.0
    return out
