"""Hot modular kernels: root finding and quadratic-character sums modulo p.

Each kernel has a numba version and a pure-numpy version with identical
results.  Set PENTACYCLE_NO_NUMBA=1 to force the numpy path; it is also used
when numba is not importable.  Inputs must keep p small enough that p*p fits
in int64 (p < 3e9).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("PENTACYCLE_NO_NUMBA", "") not in ("1", "true", "yes")
BACKEND = "numba" if USE_NUMBA else "numpy"


# --- numpy implementations ---------------------------------------------------


def _eval_all_np(coeffs, p):
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        acc = (acc * xs + c) % p
    return acc


def _square_table_np(p):
    table = np.zeros(p, dtype=np.int8)
    xs = np.arange(p, dtype=np.int64)
    table[(xs * xs) % p] = 1
    table[0] = 0
    return table


def roots_mod_p_np(coeffs, p):
    vals = _eval_all_np(np.asarray(coeffs, dtype=np.int64) % p, p)
    return np.nonzero(vals == 0)[0]


def char_sum_np(coeffs, p):
    """Sum over x in F_p of (1 + chi(f(x)))."""
    vals = _eval_all_np(np.asarray(coeffs, dtype=np.int64) % p, p)
    sq = _square_table_np(p)
    chi = np.where(vals == 0, 0, np.where(sq[vals] == 1, 1, -1))
    return int(p + chi.sum())


def char_sum_quadratic_np(coeffs, p, n):
    """Sum over x in F_p[w]/(w^2-n) of (1 + chi(f(x))), chi via the norm map."""
    a = np.repeat(np.arange(p, dtype=np.int64), p)
    b = np.tile(np.arange(p, dtype=np.int64), p)
    ra = np.zeros(p * p, dtype=np.int64)
    rb = np.zeros(p * p, dtype=np.int64)
    for c in np.asarray(coeffs, dtype=np.int64)[::-1] % p:
        # (ra + rb w)(a + b w) = ra a + n rb b + (ra b + rb a) w
        na = (ra * a + n * ((rb * b) % p) + c) % p
        nb = (ra * b + rb * a) % p
        ra, rb = na, nb
    norm = (ra * ra - n * ((rb * rb) % p)) % p
    sq = _square_table_np(p)
    chi = np.where(norm == 0, 0, np.where(sq[norm] == 1, 1, -1))
    return int(p * p + chi.sum())


# --- numba implementations ---------------------------------------------------

if HAS_NUMBA:

    @njit(cache=False)
    def _roots_mod_p_nb(coeffs, p):
        out = np.empty(p, dtype=np.int64)
        k = 0
        m = coeffs.shape[0]
        for x in range(p):
            acc = 0
            for i in range(m - 1, -1, -1):
                acc = (acc * x + coeffs[i]) % p
            if acc == 0:
                out[k] = x
                k += 1
        return out[:k]

    @njit(cache=False)
    def _square_table_nb(p):
        table = np.zeros(p, dtype=np.int8)
        for x in range(1, p):
            table[(x * x) % p] = 1
        return table

    @njit(cache=False)
    def _char_sum_nb(coeffs, p):
        sq = _square_table_nb(p)
        total = p
        m = coeffs.shape[0]
        for x in range(p):
            acc = 0
            for i in range(m - 1, -1, -1):
                acc = (acc * x + coeffs[i]) % p
            if acc != 0:
                total += 1 if sq[acc] == 1 else -1
        return total

    @njit(cache=False)
    def _char_sum_quadratic_nb(coeffs, p, n):
        sq = _square_table_nb(p)
        total = p * p
        m = coeffs.shape[0]
        for a in range(p):
            for b in range(p):
                ra = 0
                rb = 0
                for i in range(m - 1, -1, -1):
                    na = (ra * a + n * ((rb * b) % p) + coeffs[i]) % p
                    nb = (ra * b + rb * a) % p
                    ra = na
                    rb = nb
                norm = (ra * ra - n * ((rb * rb) % p)) % p
                if norm != 0:
                    total += 1 if sq[norm] == 1 else -1
        return total


# --- dispatch ------------------------------------------------------------------


def _prep(coeffs, p):
    return np.asarray([int(c) % p for c in coeffs], dtype=np.int64)


def roots_mod_p(coeffs, p, backend=None):
    """Sorted list of x in [0, p) with f(x) = 0 mod p."""
    backend = backend or BACKEND
    arr = _prep(coeffs, p)
    if backend == "numba" and HAS_NUMBA:
        return [int(x) for x in _roots_mod_p_nb(arr, p)]
    return [int(x) for x in roots_mod_p_np(arr, p)]


def char_sum(coeffs, p, backend=None):
    backend = backend or BACKEND
    arr = _prep(coeffs, p)
    if backend == "numba" and HAS_NUMBA:
        return int(_char_sum_nb(arr, p))
    return char_sum_np(arr, p)


def char_sum_quadratic(coeffs, p, n, backend=None):
    backend = backend or BACKEND
    arr = _prep(coeffs, p)
    if backend == "numba" and HAS_NUMBA:
        return int(_char_sum_quadratic_nb(arr, p, n))
    return char_sum_quadratic_np(arr, p, n)
