"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from szegoflow import _kernels_py

try:
    from szegoflow import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def cases(rng):
    u = 0.2 * (rng.standard_normal(64) + 1j * rng.standard_normal(64))
    theta = np.sort(rng.uniform(0, 2 * np.pi, 1 << 14))
    vals = rng.standard_normal(theta.size) + 1j * rng.standard_normal(theta.size)
    coeffs = rng.standard_normal(512) + 1j * rng.standard_normal(512)
    return {
        "rk4_run n=64 steps=1000": lambda k: k.rk4_run(u, 1000, 1e-3, 100),
        "szego_rhs n=256": lambda k: k.szego_rhs(np.resize(u, 256)),
        "nudft_analysis 16384x512": lambda k: k.nudft_analysis(theta, vals, -256, 512),
        "nudft_synthesis 16384x512": lambda k: k.nudft_synthesis(theta, coeffs, 0),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = [("python", _kernels_py)]
    if _kernels_c is not None:
        backends.append(("compiled", _kernels_c))
    else:
        print("compiled extension not built; timing the fallback only")
    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn in cases(np.random.default_rng(0)).items():
        times = [min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        speedup = f"{times[0] / times[1]:>9.1f}x" if len(times) == 2 else ""
        print(f"{label:<28}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times) + speedup)


if __name__ == "__main__":
    main()
