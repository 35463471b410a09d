"""Compare the compiled and pure-Python oscillatory-integral kernels.

    python3 benchmarks/bench_kernels.py [--samples N] [--omegas K] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from rigidcavity import kernels
from rigidcavity import _kernels_py


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    p.add_argument("--samples", type=int, default=20001, help="grid points of the sampled profile")
    p.add_argument("--omegas", type=int, default=64, help="frequencies evaluated per call")
    p.add_argument("--segments", type=int, default=2000, help="piecewise-constant segments")
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)

    if kernels.compiled is None:
        print("compiled kernels not built; only the Python backend is available")
    rng = np.random.default_rng(0)
    values = np.sin(np.linspace(0.0, 40.0, args.samples))
    dt = 40.0 / (args.samples - 1)
    omegas = rng.uniform(0.1, 50.0, args.omegas)
    offsets = np.sort(rng.uniform(0.0, 40.0, args.segments + 1))
    offsets[0] = 0.0
    seg_values = rng.normal(size=args.segments)

    cases = {
        "filon_linear": (lambda m: m.filon_linear(values, dt, omegas)),
        "piecewise_constant": (lambda m: m.piecewise_constant(offsets, seg_values, omegas)),
    }
    print(f"{'kernel':<20}{'python [ms]':>14}{'compiled [ms]':>16}{'speedup':>10}{'max |diff|':>14}")
    for name, call in cases.items():
        t_py = min(timeit.repeat(lambda: call(_kernels_py), number=1, repeat=args.repeat))
        if kernels.compiled is None:
            print(f"{name:<20}{t_py * 1e3:>14.2f}{'-':>16}{'-':>10}{'-':>14}")
            continue
        t_c = min(timeit.repeat(lambda: call(kernels.compiled), number=1, repeat=args.repeat))
        diff = np.max(np.abs(call(_kernels_py) - call(kernels.compiled)))
        print(f"{name:<20}{t_py * 1e3:>14.2f}{t_c * 1e3:>16.2f}{t_py / t_c:>10.1f}{diff:>14.2e}")


if __name__ == "__main__":
    main()
