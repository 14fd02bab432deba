"""Benchmark the compiled spiking kernel against the numpy fallback.

Run:  python3 benchmarks/bench_lif.py [--repeats N]

Both backends must produce bit-identical spikes and potentials; this script
asserts that on every shape before timing anything.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from phonocoach.lif import BACKEND, LifParams, simulate_lif

SHAPES = ((384, 32), (384, 256), (1536, 32), (4096, 128))


def run_once(currents: np.ndarray, params: LifParams, backend: str) -> tuple:
    return simulate_lif(currents, params, backend=backend)


def time_backend(currents: np.ndarray, params: LifParams, backend: str, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        run_once(currents, params, backend)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=20)
    args = parser.parse_args()

    if BACKEND != "compiled":
        print("compiled kernel unavailable; nothing to compare")
        return

    rng = np.random.default_rng(7)
    print(f"{'shape':>12} {'python':>12} {'compiled':>12} {'speedup':>9}")
    for neurons, steps in SHAPES:
        currents = rng.uniform(0.0, 0.4, size=(neurons, steps))
        p = LifParams(steps=steps)
        spikes_c, pots_c = run_once(currents, p, "compiled")
        spikes_py, pots_py = run_once(currents, p, "python")
        assert np.array_equal(spikes_c, spikes_py), "spike mismatch between backends"
        assert np.array_equal(pots_c, pots_py), "potential mismatch between backends"

        t_py = time_backend(currents, p, "python", args.repeats)
        t_c = time_backend(currents, p, "compiled", args.repeats)
        print(f"{neurons}x{steps:>7} {t_py * 1e3:>10.3f}ms {t_c * 1e3:>10.3f}ms {t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
