#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths on seeded random inputs: extension enumeration
(conflict-free subset classification) and the powerset degree search.
Run from the repository root:

    python benchmarks/bench_backends.py [--sizes 12,16,20] [--repeats 3]
"""

import argparse
import random
import time

import numpy as np

from argagree import _kernels
from argagree.agreement import (AgreementScenario, DegreeKind, SimilarityKind,
                                degree_of_agreement)
from argagree.core import ArgFramework, SemanticsKind, _enumerated, _classified, _index


def random_framework(rng, n, p=0.12):
    names = [f"x{i}" for i in range(n)]
    attacks = {(a, b) for a in names for b in names if rng.random() < p}
    return ArgFramework(names, attacks)


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_classify(sizes, repeats):
    print(f"{'classify':<12} {'n':>4} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    rng = random.Random(1)
    for n in sizes:
        af = random_framework(rng, n)
        _, _, targets, attackers = _index(af)
        _kernels._classify_nb(n, targets, attackers)  # warm the jit
        t_nb = time_call(lambda: _kernels._classify_nb(n, targets, attackers), repeats)
        t_np = time_call(lambda: _kernels._classify_np(n, targets, attackers), repeats)
        print(f"{'':<12} {n:>4} {t_nb * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms "
              f"{t_np / t_nb:>8.1f}x")


def bench_degrees(sizes, repeats):
    print(f"{'degrees':<12} {'|T|':>4} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    rng = random.Random(2)
    for t in sizes:
        scale, lut = _kernels.similarity_lut(min(t, 20))
        t_eff = min(t, 20)
        masks, offsets = [], [0]
        for _ in range(3):
            exts = sorted({rng.randrange(1 << t_eff) for _ in range(6)})
            masks.extend(exts)
            offsets.append(len(masks))
        em = np.asarray(masks, dtype=np.int64)
        off = np.asarray(offsets, dtype=np.int64)
        _, search_nb = _kernels._numba_impls()
        search_nb(t_eff, 0, lut, em, off, _kernels._PC16)  # warm the jit
        t_nb = time_call(lambda: search_nb(t_eff, 0, lut, em, off, _kernels._PC16),
                         repeats)
        t_np = time_call(lambda: _kernels._search_degrees_np(t_eff, 0, lut, em, off),
                         repeats)
        print(f"{'':<12} {t_eff:>4} {t_nb * 1e3:>10.2f}ms {t_np * 1e3:>10.2f}ms "
              f"{t_np / t_nb:>8.1f}x")


def bench_end_to_end(repeats):
    rng = random.Random(3)
    af = random_framework(rng, 14, p=0.15)
    topic = frozenset(sorted(af.args)[:10])
    scn = AgreementScenario(af, topic, (SemanticsKind.STAGE,
                                        SemanticsKind.PREFERRED,
                                        SemanticsKind.GROUNDED))
    print(f"{'end-to-end':<12} degree_of_agreement, 14 args, |T|=10")
    for backend in ("numba", "numpy"):
        _kernels.set_backend(backend)

        def run():
            _enumerated.cache_clear()
            _classified.cache_clear()
            from argagree.agreement import _search_all
            _search_all.cache_clear()
            degree_of_agreement(scn, DegreeKind.MEDIAN, SimilarityKind.HAMMING)

        run()  # warm
        best = time_call(run, repeats)
        print(f"{'':<12} {backend:>6} {best * 1e3:>10.2f}ms")
    _kernels.set_backend("numba")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="12,16,20")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    print(f"active backend by default: {_kernels.active_backend()}")
    bench_classify(sizes, args.repeats)
    bench_degrees(sizes, args.repeats)
    bench_end_to_end(args.repeats)


if __name__ == "__main__":
    main()
