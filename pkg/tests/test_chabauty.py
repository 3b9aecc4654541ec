from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pentacycle import chabauty as C
from pentacycle.jacobian import D_prime, jacobian_C
from pentacycle.localnum import PadicNum, strassman_bound

unit3 = st.integers(0, 26).map(lambda a: PadicNum(3 * a, 3, 4))
pair = st.tuples(unit3, unit3)


def _res(v):
    return tuple(x.residue() for x in v)


def test_local_params_of_D_prime():
    s, L = C.log_of_D_prime()
    assert s == (Fraction(-9, 14), Fraction(426, 49))
    assert _res(L) == (36, 3)


def test_exp_inverts_log_at_D_prime():
    s, L = C.log_of_D_prime()
    assert _res(C.formal_exp(L)) == _res([C._padic(v) for v in s])


@given(pair, pair, pair)
@settings(max_examples=100)
def test_formal_group_axioms_mod_81(a, b, c):
    zero = (PadicNum(0, 3, 4), PadicNum(0, 3, 4))
    assert _res(C.formal_add(a, b)) == _res(C.formal_add(b, a))
    assert _res(C.formal_add(a, zero)) == _res(a)
    assert _res(C.formal_add(a, C.formal_neg(a))) == (0, 0)
    assert _res(C.formal_add(C.formal_add(a, b), c)) == _res(C.formal_add(a, C.formal_add(b, c)))


@given(pair, pair)
@settings(max_examples=100)
def test_log_is_additive_and_exp_inverts_it(a, b):
    la, lb = C.formal_log(a), C.formal_log(b)
    lab = C.formal_log(C.formal_add(a, b))
    assert _res(lab) == tuple((x.residue() + y.residue()) % 81 for x, y in zip(la, lb))
    assert _res(C.formal_exp(la)) == _res(a)


def test_formal_group_rejects_units():
    with pytest.raises(ValueError):
        C.formal_add((1, 0), (0, 0))


def test_tail_bound():
    assert C.tail_valuation_bound() >= 4


def test_t_series():
    assert C.t_series() == ([0, 36, 0, 27], [0, 3, 0, 9])


def test_theta_series():
    assert C.theta_series("D1").coeffs() == [0, 27, 0, 0, 0]
    assert C.theta_series("D2").coeffs() == [36, 27, 18, 54, 27]
    assert C.reduce_series(C.theta_series("D2").series, 3).coeffs == (9, 0, 18, 0, 0)
    with pytest.raises(ValueError):
        C.theta_series("D3")


def test_strassman_counts():
    assert strassman_bound(C.theta_series("D1").series) == 1
    assert strassman_bound(C.reduce_series(C.theta_series("D2").series, 3)) == 2


@pytest.mark.parametrize("base", ["D1", "D2"])
def test_k_series_spot_checks(base):
    rows = C.spot_check(base)
    assert [r["n"] for r in rows] == [1, -1, 3]
    assert all(r["match"] for r in rows)


def test_residue_classes():
    assert C.residue_classes_of_l() == [1, 2, 7, 8]


def test_six_points():
    r = C.six_point_theorem()
    assert r["count"] == 6
    assert r["points"] == ["(-3,-1)", "(-3,1)", "(0,-1)", "(0,1)", "inf+", "inf-"]
    assert r["strassman"] == {"D1": 1, "D2": 2}


def test_doubling_agrees_mod_27():
    J = jacobian_C()
    s = C.log_of_D_prime()[0]
    doubled = C.formal_add(s, s)
    exact = C.local_params(J.scalar_mul(2, D_prime(J)))
    assert tuple(x % 27 for x in _res(doubled)) == tuple(C._padic(v).residue() % 27 for v in exact)


@pytest.mark.xfail(strict=True, reason="truncated addition law doubles D' correctly only mod 27; see notes")
def test_doubling_agrees_mod_81():
    J = jacobian_C()
    s = C.log_of_D_prime()[0]
    doubled = C.formal_add(s, s)
    exact = C.local_params(J.scalar_mul(2, D_prime(J)))
    assert _res(doubled) == tuple(C._padic(v).residue() for v in exact)
