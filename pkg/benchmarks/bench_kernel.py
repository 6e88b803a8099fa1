#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the same workloads in two subprocesses (one with the default backend,
one with IPSFORGE_PURE_PY=1) and prints a comparison table:

    python benchmarks/bench_kernel.py
"""

import json
import os
import subprocess
import sys
import time


def workload_tower() -> None:
    from ipsforge import gf

    gf.field_tower.cache_clear()
    gf.field_spec.cache_clear()
    gf.field_tower(2, 12)


def workload_frobenius() -> None:
    import random
    from ipsforge import generators, gf
    from ipsforge.certificates import refute_linear_frobenius, verify

    for p, k, n in ((5, 3, 5), (2, 3, 6), (3, 2, 6)):
        tower = gf.field_tower(p, k)
        rng = random.Random(1234)
        inst = generators.linear_shifted(tower, n, rng)
        cert = refute_linear_frobenius(inst.axioms[0], tower)
        assert verify(inst, cert).ok


def workload_ml_inverse() -> None:
    import random
    from ipsforge import gf
    from ipsforge.lowerbounds import ml_inverse

    tower = gf.field_tower(2, 12)
    rng = random.Random(99)
    for _ in range(20):
        alphas = [tower.base.sample(rng) for _ in range(8)]
        beta = tower.sample_beta(rng)
        ml_inverse(alphas, beta, tower)


WORKLOADS = {
    "tower(2,12) construction": workload_tower,
    "frobenius certs (5,3,5)/(2,3,6)/(3,2,6)": workload_frobenius,
    "20x ml_inverse n=8 over GF(2^24)": workload_ml_inverse,
}


def run_inner() -> None:
    from ipsforge import kernel_backend

    timings = {"backend": kernel_backend()}
    for name, fn in WORKLOADS.items():
        start = time.perf_counter()
        fn()
        timings[name] = time.perf_counter() - start
    print(json.dumps(timings))


def run_outer() -> None:
    results = {}
    for label, env_extra in (("compiled", {}), ("pure-python", {"IPSFORGE_PURE_PY": "1"})):
        env = dict(os.environ)
        env.pop("IPSFORGE_PURE_PY", None)
        env.update(env_extra)
        proc = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner"],
            env=env, capture_output=True, text=True, check=True,
        )
        results[label] = json.loads(proc.stdout)
    print(f"{'workload':<45} {'compiled':>10} {'pure':>10} {'speedup':>9}")
    print("-" * 78)
    for name in WORKLOADS:
        fast = results["compiled"][name]
        slow = results["pure-python"][name]
        print(f"{name:<45} {fast:>9.3f}s {slow:>9.3f}s {slow / fast:>8.1f}x")
    print(f"\nbackends: compiled={results['compiled']['backend']}, "
          f"pure={results['pure-python']['backend']}")
    if results["compiled"]["backend"] == results["pure-python"]["backend"]:
        print("note: compiled kernel unavailable; both runs used the fallback")


if __name__ == "__main__":
    if "--inner" in sys.argv:
        run_inner()
    else:
        run_outer()
