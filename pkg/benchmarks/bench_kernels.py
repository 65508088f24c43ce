"""Time the numba and numpy Taylor kernels, then a full monodromy run under each backend.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from singular_forge.numeric import ddkernels as dd
from singular_forge.numeric import kernels
from singular_forge.numeric._jit import USE_NUMBA

END_TO_END = """
import time
from singular_forge.generate import fuchsian_profile, generate_instance
from singular_forge.numeric.monodromy import monodromy_rep
systems = [generate_instance(fuchsian_profile(s)) for s in range(10)]
monodromy_rep(systems[0])
t = time.perf_counter()
for S in systems:
    monodromy_rep(S)
print(time.perf_counter() - t)
"""


def dd_array(rng, shape, scale=0.1):
    out = np.zeros(shape + (4,))
    out[..., 0] = scale * rng.standard_normal(shape)
    out[..., 2] = scale * rng.standard_normal(shape)
    return out


def kernel_cases(p=3):
    rng = np.random.default_rng(0)
    Nt = dd_array(rng, (4, p, p))
    dt = dd_array(rng, (2,))
    dt[0, 0] += 1.0
    c = dd_array(rng, (12, p * p), 1.0)
    z0, h = dd_array(rng, ()), dd_array(rng, ())
    Nc, dtc, cc = dd.dd_to_complex(Nt), dd.dd_to_complex(dt), dd.dd_to_complex(c)
    z0c, hc = complex(dd.dd_to_complex(z0)), complex(dd.dd_to_complex(h))
    return {
        "double step": (lambda: kernels.taylor_step_loops(Nc, dtc, 200, 1e-14),
                        lambda: kernels._taylor_step_numpy(Nc, dtc, 200, 1e-14)),
        "double shift": (lambda: kernels.taylor_shift_loops(cc, z0c, hc),
                         lambda: kernels._taylor_shift_numpy(cc, z0c, hc)),
        "dd step": (lambda: dd.dd_taylor_step_loops(Nt, dt, 200, 1e-30),
                    lambda: dd._dd_taylor_step_numpy(Nt, dt, 200, 1e-30)),
        "dd shift": (lambda: dd.dd_taylor_shift_loops(c, z0, h),
                     lambda: dd._dd_taylor_shift_numpy(c, z0, h)),
    }


def best(fn, repeat):
    fn()  # compile or warm up
    return min(timeit.repeat(fn, number=20, repeat=repeat)) / 20


def end_to_end(flag):
    env = dict(os.environ, SINGULAR_FORGE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    label = "numba" if USE_NUMBA else "python loops"
    print(f"{'kernel':<14}{label:>16}{'numpy':>14}{'ratio':>9}")
    for name, (loops, vec) in kernel_cases().items():
        a, b = best(loops, args.repeat), best(vec, args.repeat)
        print(f"{name:<14}{a * 1e6:>14.1f}us{b * 1e6:>12.1f}us{b / a:>9.2f}")
    t1, t0 = end_to_end("1"), end_to_end("0")
    print(f"monodromy_rep on 10 Fuchsian systems: numba {t1:.2f}s, numpy {t0:.2f}s")


if __name__ == "__main__":
    main()
