import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from pentacycle import _kernels as K

needs_numba = pytest.mark.skipif(not K.HAS_NUMBA, reason="numba not installed")
coeffs = st.lists(st.integers(-10**4, 10**4), min_size=2, max_size=8).filter(lambda c: c[-1] != 0)


def _brute_roots(c, p):
    return sorted(x for x in range(p) if sum(a * x**i for i, a in enumerate(c)) % p == 0)


def _legendre(a, p):
    a %= p
    return 0 if a == 0 else (1 if pow(a, (p - 1) // 2, p) == 1 else -1)


@given(coeffs, st.sampled_from([2, 3, 5, 7, 31, 101]))
def test_numpy_roots_vs_bruteforce(c, p):
    assert sorted(K.roots_mod_p(c, p, "numpy")) == _brute_roots(c, p)


@given(coeffs, st.sampled_from([3, 5, 7, 31, 101]))
def test_numpy_affine_count_vs_bruteforce(c, p):
    want = p + sum(_legendre(sum(a * x**i for i, a in enumerate(c)), p) for x in range(p))
    assert K.char_sum(c, p, "numpy") == want


@needs_numba
@given(coeffs, st.sampled_from([3, 5, 7, 31, 101, 1009]))
@settings(max_examples=50)
def test_backends_agree(c, p):
    assert K.roots_mod_p(c, p, "numba") == K.roots_mod_p(c, p, "numpy")
    assert K.char_sum(c, p, "numba") == K.char_sum(c, p, "numpy")


def test_env_flag_selects_numpy():
    code = "from pentacycle import _kernels as K; print(K.BACKEND)"
    env = dict(os.environ, PENTACYCLE_NO_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
