"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 7]

Prints the best-of-``repeat`` wall time per kernel and backend, plus the
speed-up of the compiled path. Both backends are checked to agree before
timing.
"""

import argparse
import timeit

import numpy as np

from tspullback import _backend

CASES = [
    # (N, d, tau)
    (2000, 100, 1),
    (2000, 100, 10),
    (2000, 100, 19),
    (20000, 50, 3),
    (512, 16, 1),
]


def _time(fn, repeat):
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    args = ap.parse_args(argv)

    backends = _backend.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; only the numpy fallback is available")
    names = sorted(backends, reverse=True)  # python first

    rng = np.random.default_rng(0)
    header = f"{'kernel':<16}{'N':>7}{'d':>5}{'tau':>5}" + "".join(f"{n + ' [ms]':>15}" for n in names)
    if len(names) == 2:
        header += f"{'speed-up':>10}"
    print(header)
    for N, d, tau in CASES:
        x = rng.standard_normal(N)
        m = N - (d - 1) * tau
        z = rng.standard_normal((d, m))
        for label, call in [
            ("embed", lambda k: k.embed(x, d, tau)),
            ("pullback_mean", lambda k: k.pullback_mean(z, tau)),
            ("pullback_median", lambda k: k.pullback_median(z, tau)),
        ]:
            results = [call(backends[n]) for n in names]
            assert all(np.array_equal(results[0], r) for r in results[1:]), label
            times = [_time(lambda k=backends[n]: call(k), args.repeat) for n in names]
            row = f"{label:<16}{N:>7}{d:>5}{tau:>5}" + "".join(f"{1e3 * t:>15.3f}" for t in times)
            if len(times) == 2:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
