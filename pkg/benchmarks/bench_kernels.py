"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from fiblike import BACKENDS, get_kernels


def cases(k):
    # flat series with one outlier at the end: every shift scans to the last term
    flat = np.zeros(2000)
    flat[-1] = 1.0
    u = np.sin(np.linspace(0, np.pi, 200))
    return {
        "generate 1e6 terms": lambda: k.generate_terms(3.0, 1.8, -1.0, 1.0, 5.0, 1_000_000),
        "first_period worst case, 2000 terms": lambda: k.first_period(flat, 0.0),
        "leapfrog 200 nodes x 2000 steps": lambda: k.leapfrog_run(u, u, 0.81, False, 2000),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    timings = {}
    for name in BACKENDS:
        for label, fn in cases(get_kernels(name)).items():
            timings.setdefault(label, {})[name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    print(f"{'kernel':36s}" + "".join(f"{b:>12s}" for b in BACKENDS) + ("     speedup" if len(BACKENDS) > 1 else ""))
    for label, row in timings.items():
        line = f"{label:36s}" + "".join(f"{row[b] * 1e3:10.2f}ms" for b in BACKENDS)
        if len(BACKENDS) > 1:
            line += f"{row['python'] / row['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
