#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the pure-Python twin.

Run:  python3 benchmarks/bench_kernels.py

Inputs are prepared once per backend (lists for the pure twin, intc
arrays for the compiled one) so the timings measure kernel work, not
normalisation.
"""

import time

import numpy as np

from modframe._kernels import _pure

try:
    from modframe._kernels import _ckernels
except ImportError:
    _ckernels = None

from modframe.finmod import regular_module, zmod
from modframe.finmod import submodule_lattice


def _prep(impl, table):
    arr = np.ascontiguousarray(table, dtype=np.intc)
    return arr.tolist() if impl is _pure else arr


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_meet_join(impl):
    lat = submodule_lattice(regular_module(zmod(720))).lattice  # 30 divisors
    leq = _prep(impl, lat._leq)
    return lambda: impl.meet_join_tables(leq)


def bench_fdl_sweep(impl):
    lat = submodule_lattice(regular_module(zmod(2 ** 4 * 3 ** 3))).lattice  # 20 divisors
    meet = _prep(impl, lat._meet)
    join = _prep(impl, lat._join)
    bottom = lat.bottom
    return lambda: impl.dist_witness_all(meet, join, bottom, False)


def bench_submodule_closure(impl):
    n = 1024
    idx = np.arange(n)
    add = _prep(impl, (idx[:, None] + idx[None, :]) % n)
    act = _prep(impl, (idx[:, None] * idx[None, :]) % n)
    seed = [0] * n
    seed[2] = 1
    return lambda: impl.submodule_closure(add, act, seed, 0)


def bench_hom_enumeration(impl):
    from modframe.finmod import _hom_levels

    M = regular_module(zmod(256))
    gens, levels, _ = _hom_levels(M, M)
    add = _prep(impl, M.add)
    act = _prep(impl, M.act)
    f0 = [-1] * M.size
    f0[0] = 0
    lv = [tuple(list(a) for a in level) for level in levels]
    return lambda: impl.hom_enumerate(M.size, M.size, f0, lv, add, act, 10 ** 6)


BENCHES = (
    ("meet/join tables, 30-element lattice", bench_meet_join),
    ("subset distributivity sweep, 20-element lattice", bench_fdl_sweep),
    ("submodule closure, 1024-element module", bench_submodule_closure),
    ("endomorphism enumeration, Z_256", bench_hom_enumeration),
)


def main():
    impls = [("python", _pure)]
    if _ckernels is not None:
        impls.append(("c", _ckernels))
    else:
        print("compiled backend not built; showing pure timings only")
    width = max(len(name) for name, _ in BENCHES)
    header = f"{'benchmark':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in impls)
    if len(impls) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in BENCHES:
        times = []
        for _, impl in impls:
            fn = make(impl)
            best, _ = _time(fn)
            times.append(best)
        row = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:9.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
