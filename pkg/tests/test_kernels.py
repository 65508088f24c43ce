import os
import subprocess
import sys

import mpmath
import numpy as np
from hypothesis import given, strategies as st

from singular_forge.numeric import ddkernels as dd
from singular_forge.numeric import kernels

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def random_dd(rng, shape):
    hi = rng.standard_normal(shape)
    lo = hi * 1e-17 * rng.standard_normal(shape)
    return hi, lo


def dd_complex_array(rng, shape):
    out = np.zeros(shape + (4,))
    out[..., 0], out[..., 1] = random_dd(rng, shape)
    out[..., 2], out[..., 3] = random_dd(rng, shape)
    return out


def to_mp(x):
    return mpmath.mpc(mpmath.mpf(x[0]) + mpmath.mpf(x[1]), mpmath.mpf(x[2]) + mpmath.mpf(x[3]))


@given(finite, finite)
def test_two_prod_is_exact(a, b):
    p, e = dd._two_prod(a, b)
    with mpmath.workprec(300):
        assert mpmath.mpf(p) + mpmath.mpf(e) == mpmath.mpf(a) * mpmath.mpf(b)


@given(st.integers(0, 2**32 - 1))
def test_dd_product_accuracy(seed):
    rng = np.random.default_rng(seed)
    x, y = dd_complex_array(rng, ()), dd_complex_array(rng, ())
    got = dd.dd_mul(x, y)
    with mpmath.workprec(200):
        ref = to_mp(x) * to_mp(y)
        assert abs(to_mp(got) - ref) <= 1e-30 * max(abs(ref), 1e-300)


@given(st.integers(0, 2**32 - 1), st.integers(2, 8), st.integers(1, 3))
def test_shift_loops_match_numpy(seed, n, m):
    rng = np.random.default_rng(seed)
    c = dd_complex_array(rng, (n, m))
    z0, h = dd_complex_array(rng, ()), dd_complex_array(rng, ())
    a = dd.dd_taylor_shift_loops(c, z0, h)
    b = dd._dd_taylor_shift_numpy(c, z0, h)
    scale = np.max(np.abs(dd.dd_to_complex(a)))
    assert np.max(np.abs(dd.dd_to_complex(a) - dd.dd_to_complex(b))) <= 1e-28 * scale


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_step_loops_match_numpy(seed, p):
    rng = np.random.default_rng(seed)
    Nt = dd_complex_array(rng, (3, p, p)) * 0.1
    dt = dd_complex_array(rng, (2,)) * 0.1
    dt[0, 0] += 1.0
    a, ka, oka = dd.dd_taylor_step_loops(Nt, dt, 200, 1e-30)
    b, kb, okb = dd._dd_taylor_step_numpy(Nt, dt, 200, 1e-30)
    assert oka and okb and ka == kb
    assert np.max(np.abs(dd.dd_to_complex(a) - dd.dd_to_complex(b))) <= 1e-28


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_double_and_dd_steps_agree(seed, p):
    rng = np.random.default_rng(seed)
    Nt = dd_complex_array(rng, (3, p, p)) * 0.1
    dt = dd_complex_array(rng, (2,)) * 0.1
    dt[0, 0] += 1.0
    Nt[..., 1] = Nt[..., 3] = dt[..., 1] = dt[..., 3] = 0.0
    a, _, _ = dd.dd_taylor_step(Nt, dt, 200, 1e-30)
    b, _, ok = kernels.taylor_step(dd.dd_to_complex(Nt), dd.dd_to_complex(dt), 200, 1e-16)
    assert ok
    assert np.max(np.abs(dd.dd_to_complex(a) - b)) <= 1e-13


@given(st.integers(0, 2**32 - 1), st.integers(2, 8))
def test_double_shift_loops_match_numpy(seed, n):
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    z0, h = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
    a = kernels.taylor_shift_loops(c, z0, h)
    b = kernels._taylor_shift_numpy(c, z0, h)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-12)


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, SINGULAR_FORGE_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", "from singular_forge.numeric import BACKEND; print(BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
