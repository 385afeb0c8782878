#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Times the three workloads that dominate real runs: left-normed word
evaluation (the type enumeration), twisted products of mid-sized elements
(the identity suites), and a full dimension run.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from cml3 import _kernel, _purecore
from cml3._purecore import key_from_syms, pack_sym

try:
    from cml3 import _fastcore
except ImportError:
    _fastcore = None


def _word_eval_workload(impl, reps):
    # the six-pair chains of the heaviest enumeration layer
    rng = random.Random(0)
    total = 0
    for _ in range(reps):
        value = {key_from_syms((pack_sym(0),)): 1}
        letters = [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6]
        rng.shuffle(letters)
        for i in range(0, 12, 2):
            a, b = letters[i], letters[i + 1]
            if a == b:
                continue
            value = impl.assoc_step(value, pack_sym(a), pack_sym(b))
            if not value:
                break
        total += len(value)
    return total


def _cmul_workload(impl, reps):
    rng = random.Random(1)

    def rand_elem(nterms):
        out = {}
        for _ in range(nterms):
            length = rng.randrange(1, 7)
            bases = sorted(rng.sample(range(12), length))
            syms = sorted(pack_sym(b, rng.randrange(3)) for b in bases)
            out[key_from_syms(syms)] = rng.choice((1, 2))
        return out

    total = 0
    for _ in range(reps):
        x = rand_elem(40)
        y = rand_elem(40)
        total += len(impl.cmul_terms(x, y))
    return total


def _dim_workload(_impl, n):
    # uses whichever backend cml3._kernel selected at import
    from cml3.words import _h_cached, dim_Cn

    _h_cached.cache_clear()
    return dim_Cn(n).total


def _time(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return time.perf_counter() - t0, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()

    reps = 200 if args.quick else 2000
    dim_n = 6 if args.quick else 7

    print(f"active backend: {_kernel.BACKEND}")
    if _fastcore is None:
        print("compiled kernel not built; run `python setup.py build_ext --inplace`")
    backends = [("pure", _purecore)]
    if _fastcore is not None:
        backends.append(("fast", _fastcore))

    rows = []
    for label, workload, arg in (
        ("word_eval", _word_eval_workload, reps),
        ("cmul", _cmul_workload, reps // 4),
    ):
        timings = {}
        for name, impl in backends:
            elapsed, check = _time(workload, impl, arg)
            timings[name] = (elapsed, check)
        checks = {c for _, c in timings.values()}
        assert len(checks) == 1, f"backends disagree on {label}"
        rows.append((label, timings))

    print(f"\n{'workload':<12}{'pure':>10}{'fast':>10}{'speedup':>10}")
    for label, timings in rows:
        pure_t = timings["pure"][0]
        if "fast" in timings:
            fast_t = timings["fast"][0]
            print(f"{label:<12}{pure_t:>9.3f}s{fast_t:>9.3f}s{pure_t / fast_t:>9.1f}x")
        else:
            print(f"{label:<12}{pure_t:>9.3f}s{'-':>10}{'-':>10}")

    elapsed, total = _time(_dim_workload, None, dim_n)
    print(f"\ndim run (n={dim_n}, backend={_kernel.BACKEND}): "
          f"total={total} in {elapsed:.2f}s")


if __name__ == "__main__":
    main()
