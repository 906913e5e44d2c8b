"""Compare the compiled scan kernel against the numpy fallback.

Run:  python benchmarks/bench_kernels.py [n_points]
"""

import sys
import time

import numpy as np

from progchan import _scan_py
from progchan.kernels import BACKEND, device_parts
from progchan.minimax import optimal_interaction
from progchan.oracle import ScanConfig, sample_su2

try:
    from progchan import _scan_kernel
except ImportError:
    _scan_kernel = None


def time_backend(impl, parts, ns, repeats=5):
    out = np.empty(ns.shape[0])
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        impl.fidelity_batch(parts, ns, out)
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    parts = device_parts(optimal_interaction(1, 1))
    ns = np.ascontiguousarray(sample_su2(ScanConfig(resolution=n, seed=0)))

    print(f"scan objective over {n} Bloch points (default backend: {BACKEND})")
    t_py, out_py = time_backend(_scan_py, parts, ns)
    rate_py = n / t_py / 1e6
    print(f"  python  : {t_py * 1e3:8.2f} ms   {rate_py:6.1f} Mpts/s")
    if _scan_kernel is not None:
        t_cy, out_cy = time_backend(_scan_kernel, parts, ns)
        rate_cy = n / t_cy / 1e6
        print(f"  compiled: {t_cy * 1e3:8.2f} ms   {rate_cy:6.1f} Mpts/s")
        print(f"  speedup : {t_py / t_cy:5.2f}x")
        print(f"  max |diff|: {np.max(np.abs(out_py - out_cy)):.3e}")
    else:
        print("  compiled: not built")


if __name__ == "__main__":
    main()
