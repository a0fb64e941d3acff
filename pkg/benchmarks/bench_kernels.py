"""Time the pure-Python and compiled group-law kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import random
import time

from hiddentorsion import _kernel
from hiddentorsion.tower import random_packed


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(n: int, repeat: int, stage) -> dict:
    rng = random.Random(1)
    gs, hs, ks = (random_packed(rng, n, stage=stage) for _ in range(3))
    results = {}
    for name, mod in _kernel.backends().items():
        results[name] = {
            "mul_many": _best(lambda: mod.mul_many(gs, hs), repeat),
            "associativity": _best(lambda: mod.associativity_failures(gs, hs, ks), repeat),
            "pow_1000": _best(lambda: [mod.tower_pow(g, 1000) for g in gs[:n // 10]], repeat),
        }
    if len(results) == 2:
        ref = _kernel.backends()["python"]
        fast = _kernel.backends()["cython"]
        assert ref.mul_many(gs, hs) == fast.mul_many(gs, hs), "backends disagree"
    return results


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--stage", type=int, default=None, help="draw from one stage (default: the union)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    res = run(args.n, args.repeat, args.stage)
    if args.json:
        print(json.dumps(res, indent=2, sort_keys=True))
        return
    print(f"n = {args.n}, best of {args.repeat}, default backend: {_kernel.BACKEND}")
    ops = ["mul_many", "associativity", "pow_1000"]
    print(f"{'backend':<10}" + "".join(f"{op:>16}" for op in ops))
    for name, row in res.items():
        print(f"{name:<10}" + "".join(f"{row[op]:>15.3f}s" for op in ops))
    if "cython" in res:
        print(f"{'speedup':<10}" + "".join(f"{res['python'][op] / res['cython'][op]:>15.1f}x" for op in ops))
    else:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
