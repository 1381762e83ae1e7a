#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python fallback.

Kernel microbenchmarks run both backends in-process; the end-to-end solve
comparison runs each backend in its own interpreter (backend selection
happens at import time).

Usage: python benchmarks/bench_kernels.py [--quick]
"""

from __future__ import annotations

import argparse
import subprocess
import sys
import time


def _bench(fn, args_list, repeats: int) -> float:
    t0 = time.perf_counter()
    for _ in range(repeats):
        for args in args_list:
            fn(*args)
    return (time.perf_counter() - t0) / repeats


def kernel_table(quick: bool) -> None:
    from cylwell._backend import available_backends

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; kernel table skipped")
        return
    j_args = [(n, 0.37 * i + 0.01) for i in range(400) for n in (0, 1, 2, 5)]
    k_args = [(n, 0.11 * i + 0.05) for i in range(400) for n in (0, 1, 2, 5)]
    repeats = 2 if quick else 10
    rows = []
    for name, func_name, args in (("bessel_j", "bessel_j_one", j_args),
                                  ("bessel_k_scaled", "bessel_k_scaled_two",
                                   k_args)):
        t_py = _bench(getattr(backends["python"], func_name), args, repeats)
        t_cy = _bench(getattr(backends["compiled"], func_name), args, repeats)
        rows.append((name, len(args), t_py, t_cy, t_py / t_cy))
    print(f"{'kernel':<18}{'calls':>8}{'python':>12}{'compiled':>12}"
          f"{'speedup':>10}")
    for name, n, t_py, t_cy, s in rows:
        print(f"{name:<18}{n:>8}{t_py * 1e3:>10.1f}ms{t_cy * 1e3:>10.1f}ms"
              f"{s:>9.1f}x")


_SOLVE_SNIPPET = """
import sys, time
if {hide}:
    sys.modules["cylwell._fastcore"] = None
import cylwell
from cylwell import to_atomic_units
from cylwell.spectrum import WellGeometry, enumerate_states
from cylwell.moments import compute_moments
geom = WellGeometry(radius=to_atomic_units(2.75, "nm"),
                    height=to_atomic_units(4.0, "nm"),
                    barrier=to_atomic_units(1.0, "eV"))
t0 = time.perf_counter()
sets = enumerate_states(geom, 2, 10)
for ls in sets:
    for st in ls.states:
        compute_moments(st, geom)
print(cylwell.backend_name(), time.perf_counter() - t0)
"""


def end_to_end() -> None:
    results = {}
    for hide in (False, True):
        out = subprocess.run(
            [sys.executable, "-c", _SOLVE_SNIPPET.format(hide=hide)],
            capture_output=True, text=True, check=True).stdout.split()
        results[out[0]] = float(out[1])
    print(f"\n{'end-to-end solve+moments':<26}{'time':>12}")
    for name, t in results.items():
        print(f"  {name:<24}{t:>11.2f}s")
    if "python" in results and "compiled" in results:
        print(f"  speedup: {results['python'] / results['compiled']:.1f}x")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true")
    ns = parser.parse_args()
    kernel_table(ns.quick)
    end_to_end()
