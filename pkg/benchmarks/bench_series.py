"""Benchmark the compiled truncated-multiplication kernel against the pure
Python twin on the workloads that dominate real use: series products, the
exp/log ladders, and a two-letter composition log.

Run as: python3 benchmarks/bench_series.py [--step N] [--repeat R]
"""

from __future__ import annotations

import argparse
import time
from fractions import Fraction
from random import Random

from nilbch import _series_py
from nilbch.series import EMPTY_WORD, exp_truncated, log_truncated

try:
    from nilbch import _series

    COMPILED = _series.mul_trunc
except ImportError:
    COMPILED = None

PURE = _series_py.mul_trunc


def random_series(letters: int, step: int, rng: Random, density: float = 0.7) -> dict:
    out = {}
    for d in range(1, step + 1):
        for i in range(letters**d):
            if rng.random() > density:
                continue
            w, x = [], i
            for _ in range(d):
                w.append(x % letters)
                x //= letters
            out[tuple(w)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return {w: c for w, c in out.items() if c}


def timed(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_mul(mul, p: dict, q: dict, step: int, repeat: int) -> float:
    return timed(lambda: mul(p, q, step), repeat)


def bench_exp_log(mul, p: dict, step: int, repeat: int) -> float:
    # route the ladders through the given kernel by shadowing the module global
    import nilbch.series as series

    saved = series.mul_trunc
    series.mul_trunc = mul

    def run():
        u = exp_truncated(p, step)
        log_truncated(u, step)

    try:
        return timed(run, repeat)
    finally:
        series.mul_trunc = saved


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--step", type=int, default=6)
    ap.add_argument("--letters", type=int, default=2)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = Random(7)
    p = random_series(args.letters, args.step, rng)
    q = random_series(args.letters, args.step, rng)
    x = {w: c for w, c in p.items() if w != EMPTY_WORD}

    kernels = [("pure", PURE)]
    if COMPILED is not None:
        kernels.append(("compiled", COMPILED))
    else:
        print("compiled kernel not built; benchmarking the pure twin only")

    sanity = {name: mul(p, q, args.step) for name, mul in kernels}
    if len(sanity) == 2 and sanity["pure"] != sanity["compiled"]:
        raise SystemExit("kernel outputs disagree")

    print(
        f"letters={args.letters} step={args.step} "
        f"terms: p={len(p)} q={len(q)} (best of {args.repeat})"
    )
    rows = []
    for name, mul in kernels:
        t_mul = bench_mul(mul, p, q, args.step, args.repeat)
        t_el = bench_exp_log(mul, x, args.step, args.repeat)
        rows.append((name, t_mul, t_el))
        print(f"  {name:>8}: mul_trunc {t_mul * 1e3:8.2f} ms   exp+log {t_el * 1e3:8.2f} ms")
    if len(rows) == 2:
        (_, pm, pe), (_, cm, ce) = rows
        print(f"  speedup : mul_trunc {pm / cm:8.2f} x    exp+log {pe / ce:8.2f} x")


if __name__ == "__main__":
    main()
