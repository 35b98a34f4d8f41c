"""Timing comparison of the two brute-force entropy backends.

Runs the batched channel-application + eigensolver kernel over random pure
states with both the compiled extension and the pure-numpy fallback, prints
throughput for each, and cross-checks that they agree.

Usage: python benchmarks/bench_kernels.py [n_states]
"""

import sys
import time

import numpy as np

from qmem.kernels import backend, bruteforce_entropies


def _random_states(n, rng):
    a = rng.standard_normal((n, 4)) + 1j * rng.standard_normal((n, 4))
    return a / np.linalg.norm(a, axis=1, keepdims=True)


def _time(fn, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    rng = np.random.default_rng(0)
    probs = rng.dirichlet(np.ones(16)).reshape(4, 4)
    amps = _random_states(n, rng)

    if backend() != "compiled":
        print("compiled extension unavailable; benchmarking numpy only")
        t, _ = _time(lambda: bruteforce_entropies(probs, amps, force_pure=True))
        print(f"numpy    : {t:.3f} s  ({n / t:,.0f} states/s)")
        return

    t_c, e_c = _time(lambda: bruteforce_entropies(probs, amps))
    t_n, e_n = _time(lambda: bruteforce_entropies(probs, amps, force_pure=True))
    diff = np.abs(e_c - e_n).max()
    print(f"{n} states, 16-term Kraus sum + 4x4 eigensolve per state")
    print(f"compiled : {t_c:.3f} s  ({n / t_c:,.0f} states/s)")
    print(f"numpy    : {t_n:.3f} s  ({n / t_n:,.0f} states/s)")
    print(f"speedup  : {t_n / t_c:.2f}x   max |delta entropy| = {diff:.2e}")


if __name__ == "__main__":
    main()
