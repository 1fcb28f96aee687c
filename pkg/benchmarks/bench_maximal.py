"""Benchmark the maximal-operator sweep kernels: numba vs pure numpy.

Runs the all-rectangles sweep on a range of grid sizes with both backends
in this process (the numpy implementations are always importable; the
dispatching entry point uses numba unless STRONGMAX_NO_NUMBA=1) and checks
that the outputs are bit-identical.

Usage: python3 benchmarks/bench_maximal.py
"""

import time

import numpy as np

from strongmax import _kernels
from strongmax.grid import GridFunction, build_prefix_sum

CASES = [
    ("1D  N=1024", (1024,)),
    ("1D  N=4096", (4096,)),
    ("2D  32x32", (32, 32)),
    ("2D  64x64", (64, 64)),
    ("3D  12x12x12", (12, 12, 12)),
]

NUMPY_SWEEPS = {
    1: _kernels._sweep_1d_numpy,
    2: _kernels._sweep_2d_numpy,
    3: _kernels._sweep_3d_numpy,
}


def bench(fn, *args, repeat: int = 3) -> tuple[float, np.ndarray]:
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main() -> int:
    rng = np.random.default_rng(0)
    backend = "numba" if _kernels.USING_NUMBA else "numpy (STRONGMAX_NO_NUMBA)"
    print(f"dispatching backend: {backend}")
    print(f"{'case':<16}{'dispatch':>12}{'numpy':>12}{'speedup':>10}  identical")
    for label, shape in CASES:
        f = GridFunction(shape, (1.0,) * len(shape), rng.uniform(0, 3, shape))
        P = np.stack([build_prefix_sum(f).cum])
        args = (P, f.cell_size, -1.0)
        _kernels.sweep_all_rects(*args)  # warm up (JIT compile)
        t_fast, out_fast = bench(_kernels.sweep_all_rects, *args)
        t_np, out_np = bench(NUMPY_SWEEPS[len(shape)], *args)
        same = np.array_equal(out_fast, out_np)
        print(f"{label:<16}{t_fast * 1e3:>10.2f}ms{t_np * 1e3:>10.2f}ms"
              f"{t_np / t_fast:>9.1f}x  {same}")
        assert same, f"backend outputs differ on {label}"
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
