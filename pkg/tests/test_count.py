import pytest
from hypothesis import given, strategies as st

from pentacycle import _kernels as K
from pentacycle.count import (BadReductionError, check_good_reduction, frobenius_charpoly, jacobian_order,
                              point_count, point_count_bruteforce, torsion_bound)
from pentacycle.model import curve_C

F = curve_C().f


@pytest.mark.parametrize("p,cp", [(3, (9, 0, -1, 0, 1)), (5, (25, 5, 9, 1, 1)), (7, (49, 14, 4, 2, 1))])
def test_frobenius_charpolys(p, cp):
    assert frobenius_charpoly(F, p).charpoly == cp


def test_jacobian_orders_and_torsion():
    assert jacobian_order(F, 3) == 9
    assert jacobian_order(F, 5) == 41
    assert torsion_bound(F, (3, 5)) == 1


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13, 25])
def test_point_count_vs_bruteforce(q):
    assert point_count(F, q) == point_count_bruteforce(F, q)


@pytest.mark.parametrize("p", [2, 3701])
def test_bad_primes_rejected(p):
    with pytest.raises(BadReductionError):
        check_good_reduction(F, p)


@given(st.lists(st.integers(-50, 50), min_size=2, max_size=7), st.sampled_from([5, 7, 11, 101]))
def test_backends_agree(coeffs, p):
    if not K.HAS_NUMBA:
        pytest.skip("numba not installed")
    assert K.roots_mod_p(coeffs, p, "numpy") == K.roots_mod_p(coeffs, p, "numba")
    assert K.char_sum(coeffs, p, "numpy") == K.char_sum(coeffs, p, "numba")
    assert K.char_sum_quadratic(coeffs, p, 2 if p % 8 in (3, 5) else 3, "numpy") == \
        K.char_sum_quadratic(coeffs, p, 2 if p % 8 in (3, 5) else 3, "numba")
