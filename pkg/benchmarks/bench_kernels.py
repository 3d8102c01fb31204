"""Compare the numba and numpy GF(2) elimination kernels.

Run with ``python3 benchmarks/bench_kernels.py``.  Besides the raw
kernels it times one ring-heavy workload (criterion 3) in a subprocess per
backend, since the backend is fixed at import time.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from smallcover_lab import _kernels as k


def bench_echelon(sizes, repeat: int) -> None:
    rng = np.random.default_rng(0)
    print(f"{'shape':>12} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for r, c in sizes:
        packed = k.pack(rng.integers(0, 2, size=(r, c), dtype=np.uint8))
        t_np = min(timeit.repeat(lambda: k.echelon_numpy(packed, c), number=1, repeat=repeat))
        if not k.HAVE_NUMBA:
            print(f"{r:>5}x{c:<6} {t_np * 1e3:>10.3f} {'n/a':>10}")
            continue
        k.echelon_numba(packed, c)  # compile outside the timer
        t_nb = min(timeit.repeat(lambda: k.echelon_numba(packed, c), number=1, repeat=repeat))
        assert np.array_equal(k.echelon_numpy(packed, c)[0], k.echelon_numba(packed, c)[0])
        print(f"{r:>5}x{c:<6} {t_np * 1e3:>10.3f} {t_nb * 1e3:>10.3f} {t_np / t_nb:>7.1f}x")


_WORKLOAD = "from smallcover_lab.acceptance import run_criterion; print(run_criterion(3).seconds)"


def bench_workload() -> None:
    for flag in ("1", "0"):
        env = dict(os.environ, SMALLCOVER_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", _WORKLOAD], env=env, capture_output=True, text=True, check=True)
        name = "numba" if flag == "1" else "numpy"
        print(f"criterion 3 with {name}: {float(out.stdout):.2f}s")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--skip-workload", action="store_true")
    args = parser.parse_args()
    bench_echelon([(16, 16), (64, 64), (128, 200), (256, 256), (512, 512)], args.repeat)
    if not args.skip_workload:
        bench_workload()


if __name__ == "__main__":
    main()
