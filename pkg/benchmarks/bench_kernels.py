"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each workload runs under both backends; results must be identical.
"""

import argparse
import time

from slitplane import _backend, gf
from slitplane.ctlagrange import kernel_ct
from slitplane.identities import kernel_problem_for_F
from slitplane.walks import enumerate_walks

WORKLOADS = {
    "S(x,y;t) order 24": lambda: gf.build_S(24),
    "F(y;t) order 40": lambda: gf.build_F(40),
    "F_minus order 60": lambda: gf.build_F_minus(60),
    "kernel_ct for F order 20": lambda: kernel_ct(kernel_problem_for_F(20)),
    "walk DP 30 steps": lambda: enumerate_walks(30),
}


def best_time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = _backend.available()
    if "compiled" not in backends:
        print("compiled kernels are not built; only the Python backend is available")
    print(f"{'workload':28s}" + "".join(f"{b:>12s}" for b in backends) + "     speedup")
    for name, fn in WORKLOADS.items():
        times, results = [], []
        for b in backends:
            _backend.use(b)
            t, r = best_time(fn, args.repeat)
            times.append(t)
            results.append(r)
        assert all(r == results[0] for r in results), f"backends disagree on {name}"
        speed = f"{times[0] / times[-1]:10.2f}x" if len(times) > 1 else ""
        print(f"{name:28s}" + "".join(f"{t:11.3f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
