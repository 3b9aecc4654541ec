#!/usr/bin/env python3
"""Benchmark the numba modular kernels against the pure-numpy fallback.

Times roots mod p, the character sum over F_p and the character sum over
F_{p^2} for the sextic, and checks that both backends agree.

Usage:
    python benchmarks/bench_kernels.py [--primes 101 1009 10007] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from pentacycle import _kernels as K

SEXTIC = [1, 6, 5, 22, 22, 8, 1]


def _nonresidue(p):
    from pentacycle.fields import least_nonresidue
    return least_nonresidue(p)


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def run(primes, repeat):
    rows = []
    for p in primes:
        n = _nonresidue(p)
        cases = {
            "roots_mod_p": lambda b: K.roots_mod_p(SEXTIC, p, backend=b),
            "char_sum": lambda b: K.char_sum(SEXTIC, p, backend=b),
        }
        if p <= 2000:  # the F_{p^2} sum is quadratic in p
            cases["char_sum_quadratic"] = lambda b: K.char_sum_quadratic(SEXTIC, p, n, backend=b)
        for name, fn in cases.items():
            t_np, r_np = _time(lambda: fn("numpy"), repeat)
            if K.HAS_NUMBA:
                fn("numba")  # compile outside the timing
                t_nb, r_nb = _time(lambda: fn("numba"), repeat)
                agree = r_np == r_nb
            else:
                t_nb, agree = float("nan"), True
            rows.append((name, p, t_np, t_nb, agree))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=[101, 1009, 10007])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"numba available: {K.HAS_NUMBA}; default backend: {K.BACKEND}")
    print(f"{'kernel':<20}{'p':>8}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  agree")
    ok = True
    for name, p, t_np, t_nb, agree in run(args.primes, args.repeat):
        speed = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:<20}{p:>8}{t_np:>12.5f}{t_nb:>12.5f}{speed:>10.1f}  {agree}")
        ok = ok and agree
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
