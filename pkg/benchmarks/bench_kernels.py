"""Compare the numba kernels with the fallback path.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The fallback timings use ``.py_func`` (the same code, interpreted) and the
vectorised numpy norm.  A probe is timed in a subprocess with
MINKPLANE_DISABLE_NUMBA=1 so the whole package runs without jit.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from minkplane import _kernels as K
from minkplane import Plane


def best_of(fn, repeat):
    fn()  # warm-up / compile
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def py(fn):
    return getattr(fn, "py_func", fn)


PROBE_SNIPPET = (
    "import time; from minkplane import Plane, ProbeConfig, probe; pl = Plane('lp:4');"
    "probe(pl, ProbeConfig('lp:4', 'T35', 2, 0));"
    "t = time.perf_counter(); probe(pl, ProbeConfig('lp:4', 'T35', 50, 0));"
    "print(time.perf_counter() - t)"
)


def probe_time(disable):
    env = dict(os.environ)
    env.pop("MINKPLANE_DISABLE_NUMBA", None)
    if disable:
        env["MINKPLANE_DISABLE_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", PROBE_SNIPPET], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.NUMBA_ENABLED:
        sys.exit("numba is disabled; unset MINKPLANE_DISABLE_NUMBA to compare")

    rng = np.random.default_rng(0)
    xs, ys = rng.normal(size=(2, 100_000))
    rows = []
    for name in ("lp:4", "lp:inf", "polygon:1,0;0.5,0.8;-0.5,0.8;-1,0;-0.5,-0.8;0.5,-0.8"):
        pl = Plane(name)
        p, polar = pl._p, pl._polar
        jit = best_of(lambda: K._norm_many_loop(xs, ys, p, polar), args.repeat)
        vec = best_of(lambda: K._norm_many_numpy(xs, ys, p, polar), args.repeat)
        rows.append((f"norm x1e5 {name[:10]}", jit, vec))
        jit = best_of(lambda: K.iso_roots(0.6, 0.8, 1.3, p, polar, 720, 1e-13), args.repeat)
        slow = best_of(lambda: py(K.iso_roots)(0.6, 0.8, 1.3, p, polar, 720, 1e-13), 1)
        rows.append((f"iso_roots {name[:10]}", jit, slow))
        jit = best_of(lambda: K.section_min(0.3, 1.0, 1.0, -0.2, -np.inf, np.inf, p, polar, 1e-12, 200), args.repeat)
        slow = best_of(lambda: py(K.section_min)(0.3, 1.0, 1.0, -0.2, -np.inf, np.inf, p, polar, 1e-12, 200), args.repeat)
        rows.append((f"section_min {name[:10]}", jit, slow))
    rows.append(("probe T35 lp:4 x50", probe_time(False), probe_time(True)))

    print(f"{'kernel':<28}{'numba [ms]':>12}{'fallback [ms]':>15}{'speedup':>10}")
    for label, a, b in rows:
        print(f"{label:<28}{a * 1e3:>12.3f}{b * 1e3:>15.3f}{b / a:>9.1f}x")


if __name__ == "__main__":
    main()
